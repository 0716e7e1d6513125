#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "metachain/asymptotics.hpp"

namespace metachain {

/// Limiting jump chain: P_ij = lim q_ij / sum_{j'!=i} q_ij', P_ii = 0.
struct SkeletonChain {
    Eigen::MatrixXd P;

    int size() const { return static_cast<int>(P.rows()); }
};

SkeletonChain skeleton_chain(const std::vector<std::vector<Order>>& rates);

/// Partition of the state space into ergodic classes (closed communicating
/// classes, always of size >= 2 here) and transient singletons. Ergodic
/// classes come first, ordered by smallest member, then transient
/// singletons by index.
struct Decomposition {
    struct Class {
        std::vector<int> states; // sorted
        bool ergodic = false;
    };
    std::vector<Class> classes;
};

Decomposition decompose(const SkeletonChain& sk);

/// Stationary vector of the chain whose off-diagonal entries of `rates`
/// are transition rates (the diagonal is ignored), by GTH elimination.
Eigen::VectorXd gth_stationary(Eigen::MatrixXd rates);

/// Invariant vector of the skeleton chain restricted to a closed
/// irreducible class, solved by GTH elimination (subtraction-free, so
/// entries keep relative accuracy across widely different magnitudes).
/// Returned in the order of cls.
std::vector<double> stationary(const SkeletonChain& sk, const std::vector<int>& cls);

/// Distribution of the first state of `absorbing` hit by the chain started
/// at `start`; states in `absorbing` are treated as terminal.
std::map<int, double> hitting_distribution(const SkeletonChain& sk,
                                           const std::vector<int>& absorbing,
                                           int start);

} // namespace metachain
