#include "metachain/hierarchy.hpp"

#include <algorithm>

namespace metachain {

std::vector<int> ClusterTree::resolve(int rank, int k) const {
    std::vector<int> frontier{k};
    for (int r = rank; r >= 1; --r) {
        std::vector<int> next;
        for (int c : frontier)
            next.insert(next.end(), members[r][c].begin(), members[r][c].end());
        frontier = std::move(next);
    }
    std::sort(frontier.begin(), frontier.end());
    return frontier;
}

std::vector<int> ClusterTree::path(int state) const {
    std::vector<int> p{state};
    for (int r = 0; r < rho(); ++r) p.push_back(parent[r][p.back()]);
    return p;
}

const ClusterMeasure* HierarchyLevel::find_mu(int next_cluster, int i) const {
    for (const auto& [idx, m] : mu[next_cluster])
        if (idx == i) return &m;
    return nullptr;
}

std::vector<Order>
inverse_transition_rates(const std::vector<std::vector<Order>>& Q) {
    const int n = static_cast<int>(Q.size());
    std::vector<Order> T(n);
    for (int i = 0; i < n; ++i) {
        Order row_sum = Order::zero();
        for (int j = 0; j < n; ++j)
            if (j != i) row_sum = row_sum + Q[i][j];
        if (row_sum.is_zero())
            throw EmptyRow("cluster " + std::to_string(i) + " has no outgoing rate");
        T[i] = row_sum.recip();
    }
    return T;
}

std::vector<ClusterMeasure>
cluster_invariant_measure(const std::vector<std::vector<Order>>& cluster_rates,
                          const std::vector<double>& lambda) {
    const int m = static_cast<int>(cluster_rates.size());
    if (m == 1) return {{Order::one(), 1.0}};

    std::vector<Order> T = inverse_transition_rates(cluster_rates);
    Order t_bar = Order::zero();
    for (int i = 0; i < m; ++i) t_bar = t_bar + T[i].scaled(lambda[i]);

    std::vector<ClusterMeasure> out(m);
    Order t_bar_inv = t_bar.recip();
    for (int i = 0; i < m; ++i) {
        Order mu = T[i].scaled(lambda[i]) * t_bar_inv;
        // mu sums to 1, so dominant entries sit exactly at scale class (0, 0)
        double limit = (mu.beta() == 0.0 && mu.gamma() == 0.0) ? mu.alpha() : 0.0;
        out[i] = {mu, limit};
    }
    return out;
}

namespace {

std::vector<std::vector<Order>>
restrict_rates(const std::vector<std::vector<Order>>& Q, const std::vector<int>& cls) {
    const int m = static_cast<int>(cls.size());
    std::vector<std::vector<Order>> out(m, std::vector<Order>(m, Order::zero()));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b) out[a][b] = Q[cls[a]][cls[b]];
    return out;
}

} // namespace

Hierarchy build_hierarchy(const ChainSpec& spec) {
    {
        auto violations = validate(spec);
        if (!violations.empty()) {
            std::string msg = "invalid chain:";
            for (const auto& v : violations) msg += " " + v.message() + ";";
            throw ValidationError(msg);
        }
    }

    Hierarchy h;
    h.spec = spec;
    const int N = spec.size();

    // rank 0
    HierarchyLevel level0;
    level0.rank = 0;
    level0.Q = spec.rates;
    level0.qtilde = spec.rates; // base case: cluster k is the state k itself
    h.levels.push_back(std::move(level0));

    h.tree.members.emplace_back();
    for (int i = 0; i < N; ++i) h.tree.members[0].push_back({i});

    for (int r = 0;; ++r) {
        HierarchyLevel& level = h.levels[r];
        const int n_r = level.cluster_count();
        if (n_r == 1) break; // rank rho reached; T absent (infinite)

        level.T = inverse_transition_rates(level.Q);
        level.skeleton = skeleton_chain(level.Q);
        level.decomposition = decompose(*level.skeleton);

        const auto& classes = level.decomposition->classes;
        const int n_next = static_cast<int>(classes.size());
        if (n_next >= n_r)
            throw InternalError("cluster count failed to decrease");

        // invariant measures per next-rank cluster
        level.mu.resize(n_next);
        for (int k = 0; k < n_next; ++k) {
            const auto& cls = classes[k].states;
            std::vector<double> lambda;
            if (cls.size() >= 2) lambda = stationary(*level.skeleton, cls);
            auto mus = cluster_invariant_measure(restrict_rates(level.Q, cls),
                                                lambda);
            for (size_t a = 0; a < cls.size(); ++a)
                level.mu[k].push_back({cls[a], mus[a]});
        }

        // extend the tree
        h.tree.members.emplace_back();
        h.tree.parent.emplace_back(n_r, -1);
        for (int k = 0; k < n_next; ++k) {
            h.tree.members[r + 1].push_back(classes[k].states);
            for (int i : classes[k].states) h.tree.parent[r][i] = k;
        }

        // reduced rates of the next rank
        HierarchyLevel next;
        next.rank = r + 1;
        next.Q.assign(n_next, std::vector<Order>(n_next, Order::zero()));
        for (int k = 0; k < n_next; ++k) {
            for (int l = 0; l < n_next; ++l) {
                if (k == l) continue;
                Order sum = Order::zero();
                for (const auto& [i, m] : level.mu[k])
                    for (int j : classes[l].states)
                        sum = sum + m.order * level.Q[i][j];
                next.Q[k][l] = sum;
            }
        }

        // cluster-to-state rates of the next rank
        if (r + 1 <= N) {
            next.qtilde.assign(n_next, std::vector<Order>(N, Order::zero()));
            for (int k = 0; k < n_next; ++k) {
                std::vector<int> inside = h.tree.resolve(r + 1, k);
                std::vector<bool> under(N, false);
                for (int s : inside) under[s] = true;
                for (int j = 0; j < N; ++j) {
                    if (under[j]) continue;
                    Order sum = Order::zero();
                    for (const auto& [i, m] : level.mu[k])
                        sum = sum + m.order * level.qtilde[i][j];
                    next.qtilde[k][j] = sum;
                }
            }
        }

        h.levels.push_back(std::move(next));
    }

    if (h.rho() >= N) throw InternalError("hierarchy depth exceeds state count");
    return h;
}

} // namespace metachain
