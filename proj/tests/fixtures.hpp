#pragma once

#include "metachain/chain_model.hpp"

// Shared fixture chains.
//
// chain A: two states, q12 = e^{-1/eps}, q21 = e^{-2/eps}.
// chain B: three states with a fast transient-ish state 1,
//   q12 = e^{-1/eps}, q13 = 2 e^{-1/eps}, q21 = e^{-4/eps}, q23 = e^{-5/eps},
//   q31 = e^{-4/eps}, q32 = e^{-5/eps}.
// chain D: four states in two tight pairs {1,2} and {3,4} (gamma = 1 both
//   ways inside a pair), pair-to-pair traffic through q23 (gamma 6) and
//   q32 (gamma 8), every other cross rate gamma = 9; alpha = 1, beta = 0.
namespace fixtures {

inline metachain::ChainSpec chain_a() {
    using metachain::Order;
    auto spec = metachain::make_chain({"s1", "s2"});
    spec.rates[0][1] = Order::make(1, 0, 1);
    spec.rates[1][0] = Order::make(1, 0, 2);
    return spec;
}

inline metachain::ChainSpec chain_b() {
    using metachain::Order;
    auto spec = metachain::make_chain({"s1", "s2", "s3"});
    spec.rates[0][1] = Order::make(1, 0, 1);
    spec.rates[0][2] = Order::make(2, 0, 1);
    spec.rates[1][0] = Order::make(1, 0, 4);
    spec.rates[1][2] = Order::make(1, 0, 5);
    spec.rates[2][0] = Order::make(1, 0, 4);
    spec.rates[2][1] = Order::make(1, 0, 5);
    return spec;
}

inline metachain::ChainSpec chain_d() {
    using metachain::Order;
    auto spec = metachain::make_chain({"s1", "s2", "s3", "s4"});
    auto set = [&](int i, int j, double gamma) {
        spec.rates[i][j] = Order::make(1, 0, gamma);
    };
    set(0, 1, 1);
    set(1, 0, 1);
    set(2, 3, 1);
    set(3, 2, 1);
    set(1, 2, 6);
    set(2, 1, 8);
    set(0, 2, 9);
    set(0, 3, 9);
    set(1, 3, 9);
    set(2, 0, 9);
    set(3, 0, 9);
    set(3, 1, 9);
    return spec;
}

} // namespace fixtures
