#pragma once

#include <optional>
#include <vector>

#include "metachain/chain_model.hpp"
#include "metachain/skeleton.hpp"

namespace metachain {

/// Nesting structure of the clusters across ranks. Rank-0 clusters are the
/// original states; each rank-r cluster is a set of rank-(r-1) clusters.
struct ClusterTree {
    /// members[r][k] = rank-(r-1) cluster indices inside cluster k of rank r,
    /// for r >= 1; members[0][k] = {k}.
    std::vector<std::vector<std::vector<int>>> members;
    /// parent[r][i] = rank-(r+1) cluster containing rank-r cluster i, r < rho.
    std::vector<std::vector<int>> parent;

    int rho() const { return static_cast<int>(members.size()) - 1; }
    int cluster_count(int rank) const {
        return static_cast<int>(members[rank].size());
    }
    /// Original states under cluster k of rank r, sorted.
    std::vector<int> resolve(int rank, int k) const;
    /// Cluster indices j_0..j_rho of the nesting chain of an original state.
    std::vector<int> path(int state) const;
    /// True when original state j lies under cluster k of rank r.
    bool under(int j, int rank, int k) const { return path(j)[rank] == k; }
};

struct ClusterMeasure {
    Order order;        // mu(i, eps)
    double limit = 0.0; // lim_{eps->0} mu(i, eps)
};

/// One rank of the hierarchy: the reduced rates and everything derived from
/// them. mu and qtilde describe the next rank's clusters and are absent at
/// rank rho.
struct HierarchyLevel {
    int rank = 0;
    std::vector<std::vector<Order>> Q; // n_r x n_r reduced rates
    std::vector<Order> T;              // inverse transition rates; empty at rank rho
    std::optional<SkeletonChain> skeleton;
    std::optional<Decomposition> decomposition;
    /// mu[k][i] for rank-(r+1) cluster k and rank-r cluster i inside it.
    std::vector<std::vector<std::pair<int, ClusterMeasure>>> mu;
    /// qtilde[k][j]: rate from rank-r cluster k to original state j; Zero
    /// marks pairs with j under k (undefined there).
    std::vector<std::vector<Order>> qtilde;

    int cluster_count() const { return static_cast<int>(Q.size()); }
    const ClusterMeasure* find_mu(int next_cluster, int i) const;
};

struct Hierarchy {
    ChainSpec spec;
    ClusterTree tree;
    std::vector<HierarchyLevel> levels; // ranks 0..rho

    int rho() const { return tree.rho(); }
};

/// Within-cluster invariant measure and its limit: mu(i) ~ lambda(i) T(i) / Tbar
/// with T the within-cluster exit time scale and lambda the stationary vector
/// of the cluster's skeleton. cluster_rates is the restriction of the level's
/// rate matrix to the cluster (indices local).
std::vector<ClusterMeasure>
cluster_invariant_measure(const std::vector<std::vector<Order>>& cluster_rates,
                          const std::vector<double>& lambda);

/// Reciprocal of each full row sum of Q.
std::vector<Order> inverse_transition_rates(const std::vector<std::vector<Order>>& Q);

Hierarchy build_hierarchy(const ChainSpec& spec);

} // namespace metachain
