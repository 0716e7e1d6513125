#include "metachain/asymptotics.hpp"

#include <cmath>
#include <ostream>

namespace metachain {

namespace {

// x strictly dominated by y as eps -> 0 (x/y -> 0): x decays faster.
bool dominated(const Order& x, const Order& y) {
    if (x.gamma() != y.gamma()) return x.gamma() > y.gamma();
    return x.beta() > y.beta();
}

} // namespace

Order Order::make(double alpha, double beta, double gamma) {
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
        throw NonFinite("asymptotic order fields must be finite");
    if (alpha <= 0.0)
        throw NonPositiveCoefficient("leading coefficient must be positive");
    Order o;
    o.alpha_ = alpha;
    o.beta_ = beta;
    o.gamma_ = gamma;
    o.zero_ = false;
    return o;
}

double Order::evaluate(double eps) const {
    if (!(eps > 0.0)) throw NonFinite("evaluation point must be positive");
    if (zero_) return 0.0;
    // log-space to detect overflow before it happens
    double lg = std::log(alpha_) + beta_ * std::log(eps) - gamma_ / eps;
    if (lg > 709.0) throw EvaluationOverflow("order value exceeds double range");
    return std::exp(lg);
}

Order Order::recip() const {
    if (zero_) throw DivisionByZeroOrder("reciprocal of the Zero order");
    return make(1.0 / alpha_, -beta_, -gamma_);
}

Order Order::scaled(double c) const {
    if (!(c > 0.0)) throw NonPositiveCoefficient("scale factor must be positive");
    if (zero_) return *this;
    return make(alpha_ * c, beta_, gamma_);
}

Order operator+(const Order& x, const Order& y) {
    if (x.zero_) return y;
    if (y.zero_) return x;
    if (x.commensurate_with(y)) return Order::make(x.alpha_ + y.alpha_, x.beta_, x.gamma_);
    return dominated(x, y) ? y : x;
}

Order operator*(const Order& x, const Order& y) {
    if (x.zero_ || y.zero_) return Order::zero();
    return Order::make(x.alpha_ * y.alpha_, x.beta_ + y.beta_, x.gamma_ + y.gamma_);
}

RatioLimit ratio_limit(const Order& x, const Order& y) {
    if (y.is_zero()) throw DivisionByZeroOrder("ratio limit against the Zero order");
    if (x.is_zero()) return {LimitKind::Zero, 0.0};
    if (x.commensurate_with(y)) return {LimitKind::Finite, x.alpha() / y.alpha()};
    return dominated(x, y) ? RatioLimit{LimitKind::Zero, 0.0}
                           : RatioLimit{LimitKind::Infinite, 0.0};
}

ScaleComparison compare_scale(const Order& x, const Order& y) {
    if (x.is_zero() || y.is_zero())
        throw ZeroOrderComparison("scale comparison requires non-Zero orders");
    RatioLimit rl = ratio_limit(x, y);
    switch (rl.kind) {
    case LimitKind::Zero: return {ScaleOrder::MuchSmaller, 0.0};
    case LimitKind::Finite: return {ScaleOrder::Commensurate, rl.value};
    default: return {ScaleOrder::MuchLarger, 0.0};
    }
}

std::ostream& operator<<(std::ostream& os, const Order& x) {
    if (x.is_zero()) return os << "0";
    return os << x.alpha() << "*eps^" << x.beta() << "*exp(-" << x.gamma() << "/eps)";
}

} // namespace metachain
