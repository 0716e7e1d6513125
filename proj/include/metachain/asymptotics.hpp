#pragma once

#include <iosfwd>

#include "metachain/errors.hpp"

namespace metachain {

/// One-parameter function class alpha * eps^beta * exp(-gamma/eps), ordered
/// by decay speed as eps -> 0, plus a distinguished additive Zero.
///
/// Addition keeps only the dominant term; all summands are positive, so a
/// discarded term can never be promoted by cancellation. gamma may be
/// negative, which represents growing functions (time scales).
class Order {
public:
    Order() = default; // Zero

    static Order zero() { return Order{}; }
    static Order one() { return make(1.0, 0.0, 0.0); }
    static Order make(double alpha, double beta, double gamma);

    bool is_zero() const { return zero_; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

    /// alpha * eps^beta * exp(-gamma/eps); Zero evaluates to 0. Underflow
    /// to 0 is allowed; a non-representable result throws.
    double evaluate(double eps) const;

    Order recip() const;
    Order scaled(double c) const;

    /// True when the two elements belong to the same scale class
    /// (identical beta and gamma; exact comparison by design).
    bool commensurate_with(const Order& o) const {
        return !zero_ && !o.zero_ && beta_ == o.beta_ && gamma_ == o.gamma_;
    }

    friend Order operator+(const Order& x, const Order& y);
    friend Order operator*(const Order& x, const Order& y);
    friend bool operator==(const Order& x, const Order& y) {
        return x.zero_ == y.zero_ && x.alpha_ == y.alpha_ && x.beta_ == y.beta_ &&
               x.gamma_ == y.gamma_;
    }

private:
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double gamma_ = 0.0;
    bool zero_ = true;
};

std::ostream& operator<<(std::ostream& os, const Order& x);

enum class LimitKind { Zero, Finite, Infinite };

/// lim_{eps->0} x(eps)/y(eps); the limit always exists for this family.
struct RatioLimit {
    LimitKind kind = LimitKind::Zero;
    double value = 0.0; // positive when kind == Finite

    bool is_finite() const { return kind == LimitKind::Finite; }
};

enum class ScaleOrder { MuchSmaller, Commensurate, MuchLarger };

struct ScaleComparison {
    ScaleOrder kind = ScaleOrder::Commensurate;
    double ratio = 0.0; // positive when Commensurate

    bool much_smaller() const { return kind == ScaleOrder::MuchSmaller; }
    bool much_larger() const { return kind == ScaleOrder::MuchLarger; }
    bool commensurate() const { return kind == ScaleOrder::Commensurate; }
};

RatioLimit ratio_limit(const Order& x, const Order& y);
ScaleComparison compare_scale(const Order& x, const Order& y);

} // namespace metachain
