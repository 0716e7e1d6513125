#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "metachain/skeleton.hpp"

using namespace metachain;

namespace {

// numeric oracle: q_ij(eps) / sum_j' q_ij'(eps) at small eps
Eigen::MatrixXd numeric_skeleton(const ChainSpec& spec, double eps) {
    const int n = spec.size();
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i) sum += spec.rates[i][j].evaluate(eps);
        for (int j = 0; j < n; ++j)
            if (j != i) P(i, j) = spec.rates[i][j].evaluate(eps) / sum;
    }
    return P;
}

} // namespace

TEST_CASE("skeleton of chain B") {
    auto sk = skeleton_chain(fixtures::chain_b().rates);
    CHECK(sk.P(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(sk.P(0, 2) == doctest::Approx(2.0 / 3.0));
    CHECK(sk.P(1, 0) == doctest::Approx(1.0));
    CHECK(sk.P(1, 2) == 0.0);
    CHECK(sk.P(2, 0) == doctest::Approx(1.0));
    CHECK(sk.P(2, 1) == 0.0);

    Eigen::MatrixXd oracle = numeric_skeleton(fixtures::chain_b(), 1e-3);
    CHECK((sk.P - oracle).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("two-state skeleton is the swap") {
    auto sk = skeleton_chain(fixtures::chain_a().rates);
    CHECK(sk.P(0, 1) == 1.0);
    CHECK(sk.P(1, 0) == 1.0);
}

TEST_CASE("same-order ties split proportionally") {
    auto spec = make_chain({"a", "b", "c"});
    spec.rates[0][1] = Order::make(1, 0, 1);
    spec.rates[1][0] = Order::make(1, 0, 1);
    spec.rates[0][2] = Order::make(1, 0, 3);
    spec.rates[1][2] = Order::make(1, 0, 3);
    spec.rates[2][0] = Order::make(1, 0, 2);
    spec.rates[2][1] = Order::make(1, 0, 2);
    auto sk = skeleton_chain(spec.rates);
    CHECK(sk.P(2, 0) == doctest::Approx(0.5));
    CHECK(sk.P(2, 1) == doctest::Approx(0.5));
    CHECK(sk.P(2, 2) == 0.0);
    Eigen::MatrixXd oracle = numeric_skeleton(spec, 1e-3);
    CHECK((sk.P - oracle).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("empty row is rejected") {
    std::vector<std::vector<Order>> rates(2, std::vector<Order>(2, Order::zero()));
    rates[0][1] = Order::one();
    CHECK_THROWS_AS(skeleton_chain(rates), EmptyRow);
}

TEST_CASE("decompose") {
    SUBCASE("two-cycle is one ergodic class") {
        auto d = decompose(skeleton_chain(fixtures::chain_a().rates));
        REQUIRE(d.classes.size() == 1);
        CHECK(d.classes[0].ergodic);
        CHECK(d.classes[0].states == std::vector<int>{0, 1});
    }
    SUBCASE("transient state becomes its own singleton") {
        auto spec = make_chain({"a", "b", "c"});
        spec.rates[0][1] = Order::make(1, 0, 1);
        spec.rates[1][0] = Order::make(1, 0, 1);
        spec.rates[0][2] = Order::make(1, 0, 3);
        spec.rates[1][2] = Order::make(1, 0, 3);
        spec.rates[2][0] = Order::make(1, 0, 2);
        spec.rates[2][1] = Order::make(1, 0, 2);
        auto d = decompose(skeleton_chain(spec.rates));
        REQUIRE(d.classes.size() == 2);
        CHECK(d.classes[0].ergodic);
        CHECK(d.classes[0].states == std::vector<int>{0, 1});
        CHECK_FALSE(d.classes[1].ergodic);
        CHECK(d.classes[1].states == std::vector<int>{2});
    }
    SUBCASE("two separate cycles") {
        SkeletonChain sk;
        sk.P = Eigen::MatrixXd::Zero(4, 4);
        sk.P(0, 1) = sk.P(1, 0) = 1.0;
        sk.P(2, 3) = sk.P(3, 2) = 1.0;
        auto d = decompose(sk);
        REQUIRE(d.classes.size() == 2);
        CHECK(d.classes[0].states == std::vector<int>{0, 1});
        CHECK(d.classes[1].states == std::vector<int>{2, 3});
        CHECK(d.classes[0].ergodic);
        CHECK(d.classes[1].ergodic);
    }
}

namespace {

// power-iteration oracle; the lazy chain (P + I)/2 has the same stationary
// vector and is aperiodic
std::vector<double> power_stationary(const Eigen::MatrixXd& P) {
    Eigen::MatrixXd lazy =
        0.5 * (P + Eigen::MatrixXd::Identity(P.rows(), P.cols()));
    Eigen::VectorXd v = Eigen::VectorXd::Ones(P.rows()) / double(P.rows());
    for (int it = 0; it < 20000; ++it) v = (lazy.transpose() * v).eval();
    v /= v.sum();
    return {v.data(), v.data() + v.size()};
}

} // namespace

TEST_CASE("stationary vectors") {
    SUBCASE("two-cycle") {
        auto sk = skeleton_chain(fixtures::chain_a().rates);
        auto lam = stationary(sk, {0, 1});
        CHECK(lam[0] == doctest::Approx(0.5));
        CHECK(lam[1] == doctest::Approx(0.5));
    }
    SUBCASE("chain B weights") {
        auto sk = skeleton_chain(fixtures::chain_b().rates);
        auto lam = stationary(sk, {0, 1, 2});
        CHECK(lam[0] == doctest::Approx(0.5));
        CHECK(lam[1] == doctest::Approx(1.0 / 6.0));
        CHECK(lam[2] == doctest::Approx(1.0 / 3.0));
        auto oracle = power_stationary(sk.P);
        for (int i = 0; i < 3; ++i) CHECK(lam[i] == doctest::Approx(oracle[i]));
        // residual of lambda P = lambda
        Eigen::Map<Eigen::VectorXd> l(lam.data(), 3);
        CHECK((sk.P.transpose() * l - l).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("doubly stochastic gives uniform") {
        SkeletonChain sk;
        sk.P = Eigen::MatrixXd::Zero(3, 3);
        sk.P(0, 1) = sk.P(1, 2) = sk.P(2, 0) = 1.0;
        auto lam = stationary(sk, {0, 1, 2});
        for (double x : lam) CHECK(x == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("non-irreducible class is singular") {
        SkeletonChain sk;
        sk.P = Eigen::MatrixXd::Zero(2, 2);
        sk.P(0, 1) = 1.0; // no way back
        CHECK_THROWS_AS(stationary(sk, {0, 1}), SingularSystem);
    }
}

TEST_CASE("hitting distributions") {
    SUBCASE("one-step split") {
        auto sk = skeleton_chain(fixtures::chain_b().rates);
        auto hit = hitting_distribution(sk, {1, 2}, 0);
        CHECK(hit[1] == doctest::Approx(1.0 / 3.0));
        CHECK(hit[2] == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("start inside the absorbing set") {
        auto sk = skeleton_chain(fixtures::chain_b().rates);
        auto hit = hitting_distribution(sk, {0, 2}, 0);
        CHECK(hit[0] == 1.0);
    }
    SUBCASE("Monte Carlo oracle") {
        // 4-state skeleton with an indirect route to the boundary
        SkeletonChain sk;
        sk.P = Eigen::MatrixXd::Zero(4, 4);
        sk.P(0, 1) = 0.6;
        sk.P(0, 2) = 0.4;
        sk.P(1, 0) = 0.5;
        sk.P(1, 3) = 0.5;
        sk.P(2, 2) = 0.0;
        sk.P(2, 0) = 1.0;
        sk.P(3, 3) = 1.0;
        auto hit = hitting_distribution(sk, {2, 3}, 0);

        std::mt19937_64 rng(123);
        std::uniform_real_distribution<double> unif(0, 1);
        int n2 = 0, n3 = 0;
        const int paths = 100000;
        for (int p = 0; p < paths; ++p) {
            int s = 0;
            while (s != 2 && s != 3) {
                double u = unif(rng), acc = 0;
                for (int j = 0; j < 4; ++j) {
                    acc += sk.P(s, j);
                    if (u <= acc) {
                        s = j;
                        break;
                    }
                }
            }
            (s == 2 ? n2 : n3)++;
        }
        double se = std::sqrt(hit[2] * (1 - hit[2]) / paths);
        CHECK(std::abs(hit[2] - double(n2) / paths) < 4 * se);
        CHECK(hit[2] + hit[3] == doctest::Approx(1.0));
    }
    SUBCASE("unreachable absorbing set") {
        SkeletonChain sk;
        sk.P = Eigen::MatrixXd::Zero(3, 3);
        sk.P(0, 1) = 1.0;
        sk.P(1, 0) = 1.0; // state 2 never reached
        CHECK_THROWS_AS(hitting_distribution(sk, {2}, 0), UnreachableAbsorbingSet);
    }
    SUBCASE("mass lost to a foreign recurrent class") {
        SkeletonChain sk;
        sk.P = Eigen::MatrixXd::Zero(4, 4);
        sk.P(0, 1) = 0.5;
        sk.P(0, 3) = 0.5;
        sk.P(1, 2) = 1.0;
        sk.P(2, 1) = 1.0; // {1,2} recurrent, disjoint from E = {3}
        CHECK_THROWS_AS(hitting_distribution(sk, {3}, 0), UnreachableAbsorbingSet);
    }
    SUBCASE("absorbing set covering everything is a point mass") {
        auto sk = skeleton_chain(fixtures::chain_b().rates);
        auto hit = hitting_distribution(sk, {0, 1, 2}, 1);
        CHECK(hit[1] == 1.0);
        CHECK(hit[0] == 0.0);
        CHECK(hit[2] == 0.0);
    }
}
