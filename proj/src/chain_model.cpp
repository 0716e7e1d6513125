#include "metachain/chain_model.hpp"

#include <cmath>
#include <unordered_set>

namespace metachain {

int ChainSpec::state_index(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (states[i] == label) return i;
    return -1;
}

ChainSpec make_chain(std::vector<std::string> labels) {
    ChainSpec spec;
    spec.states = std::move(labels);
    spec.rates.assign(spec.states.size(),
                      std::vector<Order>(spec.states.size(), Order::zero()));
    return spec;
}

std::string Violation::message() const {
    switch (kind) {
    case Kind::ZeroRate:
        return "zero transition rate from state " + std::to_string(from) +
               " to state " + std::to_string(to);
    case Kind::DuplicateLabel: return "duplicate state label \"" + label + "\"";
    default: return "chain has no states";
    }
}

std::vector<Violation> validate(const ChainSpec& spec) {
    std::vector<Violation> out;
    const int n = spec.size();
    if (n == 0) {
        out.push_back({Violation::Kind::EmptyChain});
        return out;
    }
    std::unordered_set<std::string> seen;
    for (const auto& label : spec.states)
        if (!seen.insert(label).second)
            out.push_back({Violation::Kind::DuplicateLabel, -1, -1, label});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && spec.rates[i][j].is_zero())
                out.push_back({Violation::Kind::ZeroRate, i, j});
    return out;
}

ChainSpec repair_zero_rates(const ChainSpec& spec) {
    const int n = spec.size();
    double aggregate = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !spec.rates[i][j].is_zero())
                aggregate += std::abs(spec.rates[i][j].gamma()) +
                             std::abs(spec.rates[i][j].beta());
    const double big_gamma = 10.0 * (1.0 + aggregate);

    ChainSpec repaired = spec;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && repaired.rates[i][j].is_zero())
                repaired.rates[i][j] = Order::make(1.0, 0.0, big_gamma);
    return repaired;
}

GeneratorMatrix instantiate_generator(const ChainSpec& spec, double eps) {
    const int n = spec.size();
    GeneratorMatrix g;
    g.eps = eps;
    g.entries = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Order& q = spec.rates[i][j];
            double v = q.evaluate(eps);
            if (v == 0.0 && !q.is_zero()) ++g.underflow_count;
            g.entries(i, j) = v;
            row_sum += v;
        }
        g.entries(i, i) = -row_sum;
    }
    return g;
}

} // namespace metachain
