#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "metachain/hierarchy.hpp"

namespace metachain {

/// Comparison of the observation scale against every inverse transition
/// rate of the hierarchy (ranks with finite T only).
struct ScaleClassification {
    /// table[r][i] = compare_scale(t, T^r(i)) for r < rho.
    std::vector<std::vector<ScaleComparison>> table;
    /// (rank, cluster) pairs where the comparison is Commensurate.
    std::vector<std::pair<int, int>> critical;

    bool has_critical() const { return !critical.empty(); }
};

ScaleClassification classify_time_scale(const Hierarchy& h, const TimeScale& t);

/// The minimal rank r whose enclosing cluster holds the chain beyond t,
/// together with the traps: sibling rank-r clusters whose exit time
/// exceeds t.
struct TrapAnalysis {
    int start = 0;          // original state
    int r = -1;             // in [-1, rho-1]
    int k = 0;              // enclosing cluster of rank r+1
    std::vector<int> traps; // rank-r cluster indices (the set L)
    int l_start = -1;       // rank-r cluster containing start; -1 when r == -1
};

TrapAnalysis rank_and_traps(const Hierarchy& h, const TimeScale& t, int state);

/// Product of limiting invariant measures along j's nesting chain up to
/// rank r+1 (1 when r == -1). Requires j to lie under cluster k of rank r+1.
double product_measure(const Hierarchy& h, int r, int k, int j);

/// Chain on the surviving rank-r clusters of the enclosing cluster, with
/// the states under the traps adjoined as a terminal set.
struct StoppedChain {
    int rank = 0;
    std::vector<int> live;      // rank-r cluster indices not in L
    std::vector<int> absorbing; // original states under the traps (the set E)
    /// rates[a][b]: a over live; b over live (from Q^r) then absorbing
    /// (from the cluster-to-state rates).
    std::vector<std::vector<Order>> rates;
};

StoppedChain build_stopped_chain(const Hierarchy& h, const TrapAnalysis& ta);

/// Limiting distribution over the terminal set, reached from a live cluster.
std::map<int, double> exit_distribution(const StoppedChain& sc, int start_cluster);

std::vector<double> metastable_distribution(const Hierarchy& h, const TimeScale& t,
                                            int state);

struct TrapTrace {
    TrapAnalysis analysis;
    std::map<int, double> eta; // empty when no traps
};

struct MetastableDistribution {
    TimeScale time;
    Eigen::MatrixXd nu;           // row i = limit law started from i
    std::vector<TrapTrace> trace; // per start state
};

MetastableDistribution metastable_all(const Hierarchy& h, const TimeScale& t);

} // namespace metachain
