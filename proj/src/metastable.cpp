#include "metachain/metastable.hpp"

#include <algorithm>
#include <functional>

namespace metachain {

ScaleClassification classify_time_scale(const Hierarchy& h, const TimeScale& t) {
    ScaleClassification cls;
    for (int r = 0; r < h.rho(); ++r) {
        const auto& T = h.levels[r].T;
        std::vector<ScaleComparison> row;
        row.reserve(T.size());
        for (int i = 0; i < static_cast<int>(T.size()); ++i) {
            ScaleComparison c = compare_scale(t.order, T[i]);
            if (c.commensurate()) cls.critical.push_back({r, i});
            row.push_back(c);
        }
        cls.table.push_back(std::move(row));
    }
    return cls;
}

namespace {

[[noreturn]] void throw_critical(int rank, int cluster) {
    throw CriticalTimeScale("time scale is commensurate with an inverse "
                            "transition rate (rank " +
                                std::to_string(rank) + ", cluster " +
                                std::to_string(cluster) + ")",
                            {{rank, cluster}});
}

// t << T^rank(cluster), treating rank rho as infinite.
bool frozen_at(const Hierarchy& h, const TimeScale& t, int rank, int cluster) {
    if (rank == h.rho()) return true;
    ScaleComparison c = compare_scale(t.order, h.levels[rank].T[cluster]);
    if (c.commensurate()) throw_critical(rank, cluster);
    return c.much_smaller();
}

} // namespace

TrapAnalysis rank_and_traps(const Hierarchy& h, const TimeScale& t, int state) {
    std::vector<int> path = h.tree.path(state);

    TrapAnalysis ta;
    ta.start = state;
    ta.r = h.rho() - 1; // reached at the latest when T is infinite
    for (int r = -1; r < h.rho(); ++r) {
        if (frozen_at(h, t, r + 1, path[r + 1])) {
            ta.r = r;
            break;
        }
    }
    ta.k = path[ta.r + 1];
    if (ta.r >= 0) {
        ta.l_start = path[ta.r];
        for (int l : h.tree.members[ta.r + 1][ta.k]) {
            if (l == ta.l_start) continue;
            if (frozen_at(h, t, ta.r, l)) ta.traps.push_back(l);
        }
    }
    return ta;
}

double product_measure(const Hierarchy& h, int r, int k, int j) {
    std::vector<int> path = h.tree.path(j);
    if (path[r + 1] != k)
        throw NotInCluster("state " + std::to_string(j) +
                           " is not under the given cluster");
    double prod = 1.0;
    for (int s = 0; s <= r; ++s) {
        const ClusterMeasure* m = h.levels[s].find_mu(path[s + 1], path[s]);
        if (!m) throw InternalError("missing invariant measure entry");
        prod *= m->limit;
    }
    return prod;
}

StoppedChain build_stopped_chain(const Hierarchy& h, const TrapAnalysis& ta) {
    StoppedChain sc;
    sc.rank = ta.r;
    const auto& siblings = h.tree.members[ta.r + 1][ta.k];
    for (int l : siblings)
        if (std::find(ta.traps.begin(), ta.traps.end(), l) == ta.traps.end())
            sc.live.push_back(l);
    for (int l : ta.traps) {
        std::vector<int> states = h.tree.resolve(ta.r, l);
        sc.absorbing.insert(sc.absorbing.end(), states.begin(), states.end());
    }
    std::sort(sc.absorbing.begin(), sc.absorbing.end());

    const auto& level = h.levels[ta.r];
    const int nl = static_cast<int>(sc.live.size());
    const int ne = static_cast<int>(sc.absorbing.size());
    sc.rates.assign(nl, std::vector<Order>(nl + ne, Order::zero()));
    for (int a = 0; a < nl; ++a) {
        for (int b = 0; b < nl; ++b)
            if (a != b) sc.rates[a][b] = level.Q[sc.live[a]][sc.live[b]];
        for (int c = 0; c < ne; ++c)
            sc.rates[a][nl + c] = level.qtilde[sc.live[a]][sc.absorbing[c]];
    }
    return sc;
}

std::map<int, double> exit_distribution(const StoppedChain& sc, int start_cluster) {
    const int nl = static_cast<int>(sc.live.size());
    const int ne = static_cast<int>(sc.absorbing.size());
    const int n = nl + ne;

    SkeletonChain sk;
    sk.P = Eigen::MatrixXd::Zero(n, n);
    for (int a = 0; a < nl; ++a) {
        Order row_sum = Order::zero();
        for (int b = 0; b < n; ++b) row_sum = row_sum + sc.rates[a][b];
        if (row_sum.is_zero()) throw EmptyRow("stopped chain row has no exit");
        for (int b = 0; b < n; ++b) {
            if (sc.rates[a][b].is_zero()) continue;
            RatioLimit rl = ratio_limit(sc.rates[a][b], row_sum);
            sk.P(a, b) = rl.is_finite() ? rl.value : 0.0;
        }
    }
    // terminal rows stay zero

    int start = -1;
    for (int a = 0; a < nl; ++a)
        if (sc.live[a] == start_cluster) start = a;
    if (start < 0) throw InternalError("start cluster is not live");

    std::vector<int> boundary(ne);
    for (int c = 0; c < ne; ++c) boundary[c] = nl + c;
    std::map<int, double> hit = hitting_distribution(sk, boundary, start);

    std::map<int, double> out;
    for (int c = 0; c < ne; ++c) out[sc.absorbing[c]] = hit[nl + c];
    return out;
}

namespace {

Eigen::VectorXd
metastable_row(const Hierarchy& h, const TimeScale& t, int state,
               std::map<int, Eigen::VectorXd>& memo,
               std::vector<TrapTrace>* traces, int depth_budget) {
    auto it = memo.find(state);
    if (it != memo.end()) return it->second;
    if (depth_budget < 0) throw InternalError("trap recursion exceeded its bound");

    const int N = h.spec.size();
    TrapAnalysis ta = rank_and_traps(h, t, state);
    Eigen::VectorXd row = Eigen::VectorXd::Zero(N);
    TrapTrace trace{ta, {}};

    if (ta.traps.empty()) {
        for (int j : h.tree.resolve(ta.r + 1, ta.k))
            row(j) = product_measure(h, ta.r, ta.k, j);
    } else {
        StoppedChain sc = build_stopped_chain(h, ta);
        std::map<int, double> eta = exit_distribution(sc, ta.l_start);
        trace.eta = eta;
        for (const auto& [target, weight] : eta) {
            if (weight == 0.0) continue;
            row += weight * metastable_row(h, t, target, memo, traces, ta.r);
        }
    }

    memo.emplace(state, row);
    if (traces) (*traces)[state] = std::move(trace);
    return row;
}

} // namespace

std::vector<double> metastable_distribution(const Hierarchy& h, const TimeScale& t,
                                            int state) {
    ScaleClassification cls = classify_time_scale(h, t);
    if (cls.has_critical())
        throw CriticalTimeScale("time scale is commensurate with an inverse "
                                "transition rate",
                                cls.critical);
    std::map<int, Eigen::VectorXd> memo;
    Eigen::VectorXd row = metastable_row(h, t, state, memo, nullptr, h.rho());
    return {row.data(), row.data() + row.size()};
}

MetastableDistribution metastable_all(const Hierarchy& h, const TimeScale& t) {
    ScaleClassification cls = classify_time_scale(h, t);
    if (cls.has_critical())
        throw CriticalTimeScale("time scale is commensurate with an inverse "
                                "transition rate",
                                cls.critical);

    const int N = h.spec.size();
    MetastableDistribution out;
    out.time = t;
    out.nu = Eigen::MatrixXd::Zero(N, N);
    out.trace.resize(N);

    std::map<int, Eigen::VectorXd> memo;
    for (int i = 0; i < N; ++i)
        out.nu.row(i) =
            metastable_row(h, t, i, memo, &out.trace, h.rho()).transpose();
    return out;
}

} // namespace metachain
