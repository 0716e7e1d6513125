#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "metachain/metastable.hpp"

namespace metachain {

struct TransientSolverConfig {
    enum class Method { Expm, MonteCarlo };
    Method method = Method::Expm;
    std::vector<double> eps_ladder; // strictly decreasing
    long paths = 10000;
    long jump_cap = 1000; // per path
    std::uint64_t rng_seed = 1;
};

/// Row `start` of exp(t G) by scaling and squaring on the transition
/// matrix, with row renormalization after every squaring.
Eigen::VectorXd transient_distribution(const GeneratorMatrix& g, double t, int start);

/// Mean fraction of the elapsed time spent in each state (the occupation
/// fractions), with standard errors across paths.
struct OccupationStats {
    Eigen::VectorXd mean;
    Eigen::VectorXd std_error;
    long paths = 0;
    long capped = 0; // paths truncated at the jump cap

    bool cap_saturated() const { return capped * 100 > paths; }
};

struct SimulationResult {
    Eigen::VectorXd end_distribution;
    Eigen::VectorXd end_std_error;
    OccupationStats occupation;
};

/// Jump-chain simulation with exponential holding times; deterministic
/// given the seed (per-path streams derived from (seed, path index)).
SimulationResult simulate_paths(const GeneratorMatrix& g, double t, int start,
                                const TransientSolverConfig& cfg);

/// Stationary vector of the generator (GTH elimination on the rates).
Eigen::VectorXd exact_stationary(const GeneratorMatrix& g);

struct ComparisonReport {
    TimeScale time;
    Eigen::MatrixXd predicted; // nu
    struct LadderPoint {
        double eps = 0.0;
        Eigen::MatrixXd numeric; // row per start state
        double max_error = 0.0;  // max entry |numeric - predicted|
    };
    std::vector<LadderPoint> ladder;
    bool monotone = true; // max errors non-increasing along the ladder
    double final_error() const { return ladder.back().max_error; }
};

ComparisonReport compare(const Hierarchy& h, const TimeScale& t,
                         const MetastableDistribution& nu,
                         const TransientSolverConfig& cfg);

/// Largest |gamma| appearing in the rates, used for the ladder range cap.
double max_abs_gamma(const ChainSpec& spec);

} // namespace metachain
