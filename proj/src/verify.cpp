#include "metachain/verify.hpp"

#include <cmath>
#include <random>

#include "metachain/skeleton.hpp"

namespace metachain {

namespace {

void renormalize_rows(Eigen::MatrixXd& M) {
    const int n = static_cast<int>(M.rows());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (M(i, j) < 0.0) M(i, j) = 0.0;
        double s = M.row(i).sum();
        if (std::abs(s - 1.0) > 1e-8)
            throw InternalError("row drift exceeded tolerance during squaring");
        M.row(i) /= s;
    }
}

} // namespace

Eigen::VectorXd transient_distribution(const GeneratorMatrix& g, double t, int start) {
    const int n = static_cast<int>(g.entries.rows());
    if (!(t > 0.0)) throw NonFinite("time must be positive");
    if (n == 1) return Eigen::VectorXd::Ones(1);

    Eigen::MatrixXd A = t * g.entries;
    double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (norm > 0.5) {
        s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        if (s > 1024) throw ScalingOverflow("scaling exponent exceeds 1024");
        A /= std::pow(2.0, s);
    }

    // truncated Taylor series; ||A|| <= 0.5 so a few terms reach machine precision
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = (term * A) / static_cast<double>(k);
        M += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    renormalize_rows(M);

    for (int i = 0; i < s; ++i) {
        M = M * M;
        renormalize_rows(M);
    }

    Eigen::VectorXd row = M.row(start).transpose();
    for (int j = 0; j < n; ++j) row(j) = std::clamp(row(j), 0.0, 1.0);
    return row;
}

SimulationResult simulate_paths(const GeneratorMatrix& g, double t, int start,
                                const TransientSolverConfig& cfg) {
    const int n = static_cast<int>(g.entries.rows());
    const long paths = cfg.paths;

    Eigen::VectorXd end_counts = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd occ_sum = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd occ_sq = Eigen::VectorXd::Zero(n);
    long capped = 0;

    for (long p = 0; p < paths; ++p) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed),
                          static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                          static_cast<std::uint32_t>(p),
                          static_cast<std::uint32_t>(p >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        int state = start;
        double elapsed = 0.0;
        long jumps = 0;
        Eigen::VectorXd occupancy = Eigen::VectorXd::Zero(n);

        while (elapsed < t) {
            double exit_rate = -g.entries(state, state);
            if (exit_rate <= 0.0) { // numerically absorbing
                occupancy(state) += t - elapsed;
                elapsed = t;
                break;
            }
            double holding = -std::log1p(-unif(rng)) / exit_rate;
            if (elapsed + holding >= t) {
                occupancy(state) += t - elapsed;
                elapsed = t;
                break;
            }
            occupancy(state) += holding;
            elapsed += holding;
            if (++jumps >= cfg.jump_cap) {
                ++capped;
                break;
            }
            double u = unif(rng) * exit_rate;
            double acc = 0.0;
            int next = -1;
            for (int j = 0; j < n; ++j) {
                if (j == state) continue;
                acc += g.entries(state, j);
                if (u <= acc) {
                    next = j;
                    break;
                }
            }
            state = next >= 0 ? next : state;
        }

        end_counts(state) += 1.0;
        if (elapsed > 0.0) {
            Eigen::VectorXd frac = occupancy / elapsed;
            occ_sum += frac;
            occ_sq += frac.cwiseProduct(frac);
        }
    }

    SimulationResult out;
    out.end_distribution = end_counts / static_cast<double>(paths);
    out.end_std_error = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        double p = out.end_distribution(j);
        out.end_std_error(j) = std::sqrt(p * (1.0 - p) / static_cast<double>(paths));
    }
    out.occupation.paths = paths;
    out.occupation.capped = capped;
    out.occupation.mean = occ_sum / static_cast<double>(paths);
    out.occupation.std_error = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j) {
        double var = occ_sq(j) / static_cast<double>(paths) -
                     out.occupation.mean(j) * out.occupation.mean(j);
        out.occupation.std_error(j) =
            std::sqrt(std::max(var, 0.0) / static_cast<double>(paths));
    }
    return out;
}

Eigen::VectorXd exact_stationary(const GeneratorMatrix& g) {
    return gth_stationary(g.entries);
}

ComparisonReport compare(const Hierarchy& h, const TimeScale& t,
                         const MetastableDistribution& nu,
                         const TransientSolverConfig& cfg) {
    if (cfg.eps_ladder.empty()) throw ValidationError("epsilon ladder is empty");
    for (size_t i = 1; i < cfg.eps_ladder.size(); ++i)
        if (!(cfg.eps_ladder[i] < cfg.eps_ladder[i - 1]))
            throw ValidationError("epsilon ladder must be strictly decreasing");

    const int N = h.spec.size();
    ComparisonReport rep;
    rep.time = t;
    rep.predicted = nu.nu;

    double prev_error = -1.0;
    for (double eps : cfg.eps_ladder) {
        GeneratorMatrix g = instantiate_generator(h.spec, eps);
        double tv;
        try {
            tv = t.order.evaluate(eps);
        } catch (const EvaluationOverflow&) {
            throw EvaluationOverflow("time scale overflows at eps = " +
                                     std::to_string(eps));
        }
        ComparisonReport::LadderPoint point;
        point.eps = eps;
        point.numeric = Eigen::MatrixXd::Zero(N, N);
        for (int i = 0; i < N; ++i) {
            Eigen::VectorXd row;
            if (cfg.method == TransientSolverConfig::Method::Expm)
                row = transient_distribution(g, tv, i);
            else
                row = simulate_paths(g, tv, i, cfg).end_distribution;
            point.numeric.row(i) = row.transpose();
        }
        point.max_error = (point.numeric - rep.predicted).cwiseAbs().maxCoeff();
        if (prev_error >= 0.0 && point.max_error > prev_error + 1e-12)
            rep.monotone = false;
        prev_error = point.max_error;
        rep.ladder.push_back(std::move(point));
    }
    return rep;
}

double max_abs_gamma(const ChainSpec& spec) {
    double m = 0.0;
    for (const auto& row : spec.rates)
        for (const Order& q : row)
            if (!q.is_zero()) m = std::max(m, std::abs(q.gamma()));
    return m;
}

} // namespace metachain
