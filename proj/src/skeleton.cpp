#include "metachain/skeleton.hpp"

#include <algorithm>
#include <queue>

namespace metachain {

SkeletonChain skeleton_chain(const std::vector<std::vector<Order>>& rates) {
    const int n = static_cast<int>(rates.size());
    SkeletonChain sk;
    sk.P = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        Order row_sum = Order::zero();
        for (int j = 0; j < n; ++j)
            if (j != i) row_sum = row_sum + rates[i][j];
        if (row_sum.is_zero())
            throw EmptyRow("state " + std::to_string(i) + " has no outgoing rate");
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            RatioLimit rl = ratio_limit(rates[i][j], row_sum);
            // a term never dominates the sum it belongs to
            if (rl.kind == LimitKind::Infinite)
                throw InternalError("rate dominates its own row sum");
            sk.P(i, j) = rl.is_finite() ? rl.value : 0.0;
        }
    }
    return sk;
}

namespace {

// Iterative Tarjan; returns SCC id per state, ids in reverse topological
// order of the condensation.
std::vector<int> tarjan_scc(const Eigen::MatrixXd& P, int& scc_count) {
    const int n = static_cast<int>(P.rows());
    std::vector<int> index(n, -1), lowlink(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    scc_count = 0;

    struct Frame {
        int v;
        int next_child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call_stack{{root, 0}};
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call_stack.empty()) {
            Frame& f = call_stack.back();
            int v = f.v;
            bool descended = false;
            while (f.next_child < n) {
                int w = f.next_child++;
                if (P(v, w) <= 0.0) continue;
                if (index[w] == -1) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call_stack.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = scc_count;
                } while (w != v);
                ++scc_count;
            }
            call_stack.pop_back();
            if (!call_stack.empty()) {
                int parent = call_stack.back().v;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return comp;
}

} // namespace

Decomposition decompose(const SkeletonChain& sk) {
    const int n = sk.size();
    int scc_count = 0;
    std::vector<int> comp = tarjan_scc(sk.P, scc_count);

    std::vector<bool> closed(scc_count, true);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sk.P(i, j) > 0.0 && comp[i] != comp[j]) closed[comp[i]] = false;

    std::vector<std::vector<int>> members(scc_count);
    for (int i = 0; i < n; ++i) members[comp[i]].push_back(i);

    std::vector<Decomposition::Class> ergodic, transient;
    for (int c = 0; c < scc_count; ++c) {
        if (closed[c] && members[c].size() >= 2) {
            ergodic.push_back({members[c], true});
        } else if (closed[c]) {
            // P_ii = 0 with a stochastic row rules out closed singletons
            throw InternalError("closed singleton class in skeleton chain");
        } else {
            for (int s : members[c]) transient.push_back({{s}, false});
        }
    }
    std::sort(ergodic.begin(), ergodic.end(),
              [](const auto& a, const auto& b) { return a.states[0] < b.states[0]; });
    std::sort(transient.begin(), transient.end(),
              [](const auto& a, const auto& b) { return a.states[0] < b.states[0]; });

    Decomposition d;
    d.classes = std::move(ergodic);
    d.classes.insert(d.classes.end(), transient.begin(), transient.end());
    return d;
}

Eigen::VectorXd gth_stationary(Eigen::MatrixXd rates) {
    const int m = static_cast<int>(rates.rows());
    if (m == 1) return Eigen::VectorXd::Ones(1);
    for (int k = m - 1; k >= 1; --k) {
        double s = 0.0;
        for (int j = 0; j < k; ++j) s += rates(k, j);
        if (!(s > 0.0))
            throw SingularSystem("chain is not irreducible on the given class");
        for (int i = 0; i < k; ++i) rates(i, k) /= s;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) rates(i, j) += rates(i, k) * rates(k, j);
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    x(0) = 1.0;
    for (int k = 1; k < m; ++k) {
        double v = 0.0;
        for (int i = 0; i < k; ++i) v += x(i) * rates(i, k);
        x(k) = v;
    }
    double total = x.sum();
    if (!(total > 0.0)) throw SingularSystem("degenerate stationary vector");
    return x / total;
}

std::vector<double> stationary(const SkeletonChain& sk, const std::vector<int>& cls) {
    const int m = static_cast<int>(cls.size());
    Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b) rates(a, b) = sk.P(cls[a], cls[b]);
    Eigen::VectorXd lam = gth_stationary(std::move(rates));
    return {lam.data(), lam.data() + m};
}

std::map<int, double> hitting_distribution(const SkeletonChain& sk,
                                           const std::vector<int>& absorbing,
                                           int start) {
    const int n = sk.size();
    std::vector<bool> is_absorbing(n, false);
    for (int e : absorbing) is_absorbing[e] = true;

    if (is_absorbing[start]) return {{start, 1.0}};

    // forward reachability from start, not expanding absorbing states
    std::vector<bool> reachable(n, false);
    std::queue<int> bfs;
    bfs.push(start);
    reachable[start] = true;
    while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop();
        if (is_absorbing[v]) continue;
        for (int w = 0; w < n; ++w)
            if (sk.P(v, w) > 0.0 && !reachable[w]) {
                reachable[w] = true;
                bfs.push(w);
            }
    }

    std::vector<int> interior, boundary;
    for (int v = 0; v < n; ++v) {
        if (!reachable[v]) continue;
        if (is_absorbing[v])
            boundary.push_back(v);
        else
            interior.push_back(v);
    }
    if (boundary.empty())
        throw UnreachableAbsorbingSet("absorbing set not reachable from start");

    // every interior state must reach the boundary, otherwise mass is lost
    {
        std::vector<bool> reaches(n, false);
        std::queue<int> back;
        for (int e : boundary) {
            reaches[e] = true;
            back.push(e);
        }
        while (!back.empty()) {
            int w = back.front();
            back.pop();
            for (int v : interior)
                if (!reaches[v] && sk.P(v, w) > 0.0) {
                    reaches[v] = true;
                    back.push(v);
                }
        }
        for (int v : interior)
            if (!reaches[v])
                throw UnreachableAbsorbingSet(
                    "a recurrent class outside the absorbing set is reachable");
    }

    const int m = static_cast<int>(interior.size());
    const int b = static_cast<int>(boundary.size());
    std::vector<int> pos(n, -1);
    for (int a = 0; a < m; ++a) pos[interior[a]] = a;

    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, b);
    for (int a = 0; a < m; ++a) {
        for (int w = 0; w < n; ++w) {
            double p = sk.P(interior[a], w);
            if (p <= 0.0) continue;
            if (pos[w] >= 0) A(a, pos[w]) -= p;
        }
        for (int c = 0; c < b; ++c) B(a, c) = sk.P(interior[a], boundary[c]);
    }
    Eigen::MatrixXd H = A.partialPivLu().solve(B);

    std::map<int, double> out;
    int start_row = pos[start];
    double total = 0.0;
    for (int c = 0; c < b; ++c) {
        double p = std::clamp(H(start_row, c), 0.0, 1.0);
        out[boundary[c]] = p;
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10)
        throw UnreachableAbsorbingSet("hitting probabilities do not sum to one");
    for (int e : absorbing)
        if (!out.count(e)) out[e] = 0.0;
    return out;
}

} // namespace metachain
