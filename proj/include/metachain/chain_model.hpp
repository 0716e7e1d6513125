#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "metachain/asymptotics.hpp"

namespace metachain {

/// N states with an off-diagonal matrix of asymptotic-order transition
/// rates. The diagonal is ignored (kept as Zero).
struct ChainSpec {
    std::vector<std::string> states;
    std::vector<std::vector<Order>> rates; // N x N

    int size() const { return static_cast<int>(states.size()); }
    int state_index(const std::string& label) const; // -1 if unknown
};

ChainSpec make_chain(std::vector<std::string> labels);

/// Observation time scale t(eps) = c * eps^b * exp(lambda/eps),
/// stored as the order (c, b, -lambda).
struct TimeScale {
    Order order;

    static TimeScale make(double c, double b, double lambda) {
        return {Order::make(c, b, -lambda)};
    }
    double c() const { return order.alpha(); }
    double b() const { return order.beta(); }
    double lambda() const { return -order.gamma(); }
};

struct Violation {
    enum class Kind { ZeroRate, DuplicateLabel, EmptyChain };
    Kind kind;
    int from = -1;
    int to = -1;
    std::string label;

    std::string message() const;
};

std::vector<Violation> validate(const ChainSpec& spec);

/// Replaces every Zero off-diagonal rate by exp(-G/eps) with G large enough
/// that the repaired edges never reach any leading order. Idempotent.
ChainSpec repair_zero_rates(const ChainSpec& spec);

struct GeneratorMatrix {
    double eps = 0.0;
    Eigen::MatrixXd entries;  // row sums 0, off-diagonals >= 0
    int underflow_count = 0;  // off-diagonal entries that vanished numerically
};

GeneratorMatrix instantiate_generator(const ChainSpec& spec, double eps);

} // namespace metachain
