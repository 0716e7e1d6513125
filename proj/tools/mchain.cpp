#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "metachain/chain_io.hpp"
#include "metachain/report.hpp"

namespace {

using namespace metachain;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitCritical = 4;
constexpr int kExitVerification = 5;
constexpr double kRangeCap = 60.0; // max exponent magnitude over eps

struct CommonOptions {
    std::string spec_path;
    bool repair = false;
    std::string format = "json";
    std::string output;
};

TimeScale parse_time(const std::string& text) {
    double c, b, lambda;
    char comma1, comma2;
    std::istringstream is(text);
    if (!(is >> c >> comma1 >> b >> comma2 >> lambda) || comma1 != ',' ||
        comma2 != ',' || !is.eof())
        throw ParseError("--time expects C,B,LAMBDA");
    return TimeScale::make(c, b, lambda);
}

std::vector<double> parse_ladder(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ParseError("--eps expects a comma-separated list of numbers");
        }
    }
    if (out.empty()) throw ParseError("--eps list is empty");
    return out;
}

void emit(const CommonOptions& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opt.output);
    if (!out) throw ParseError("cannot open output file: " + opt.output);
    out << text;
}

ChainSpec load_spec(const CommonOptions& opt, const TimeScale* time) {
    ChainSpec spec = parse_chain_file(opt.spec_path);
    auto violations = validate(spec);
    bool had_zero = false;
    for (const auto& v : violations)
        if (v.kind == Violation::Kind::ZeroRate) had_zero = true;

    if (opt.repair && had_zero) {
        spec = repair_zero_rates(spec);
        std::cerr << "note: zero rates repaired with a large decay exponent\n";
        if (time) {
            double big_gamma = 0.0;
            for (const auto& row : spec.rates)
                for (const Order& q : row)
                    if (!q.is_zero()) big_gamma = std::max(big_gamma, q.gamma());
            if (-time->order.gamma() >= big_gamma)
                std::cerr << "warning: time scale reaches the repaired-edge "
                             "scale; results may depend on the repair choice\n";
        }
        violations = validate(spec);
    }
    if (!violations.empty()) {
        std::string msg = "invalid chain:";
        for (const auto& v : violations) msg += "\n  " + v.message();
        throw ValidationError(msg);
    }
    return spec;
}

int cmd_hierarchy(const CommonOptions& opt) {
    ChainSpec spec = load_spec(opt, nullptr);
    Hierarchy h = build_hierarchy(spec);
    emit(opt, opt.format == "text" ? hierarchy_report_text(h)
                                   : hierarchy_report_json(h));
    return kExitOk;
}

int cmd_metastable(const CommonOptions& opt, const std::string& time_text,
                   const std::string& from) {
    TimeScale t = parse_time(time_text);
    ChainSpec spec = load_spec(opt, &t);
    Hierarchy h = build_hierarchy(spec);
    MetastableDistribution md = metastable_all(h, t);
    if (from != "all") {
        int idx = spec.state_index(from);
        if (idx < 0) throw ValidationError("unknown state label: " + from);
        MetastableDistribution single;
        single.time = md.time;
        single.nu = md.nu.row(idx);
        single.trace = {md.trace[idx]};
        std::ostringstream os;
        os << "from " << from << ":";
        for (int j = 0; j < single.nu.cols(); ++j) os << " " << single.nu(0, j);
        os << "\n";
        emit(opt, opt.format == "text" ? os.str()
                                       : metastable_report_json(h, single));
        return kExitOk;
    }
    emit(opt, opt.format == "text" ? metastable_report_text(h, md)
                                   : metastable_report_json(h, md));
    return kExitOk;
}

int cmd_verify(const CommonOptions& opt, const std::string& time_text,
               const std::string& eps_text, const std::string& method,
               long paths, long jump_cap, std::uint64_t seed, double tol) {
    TimeScale t = parse_time(time_text);
    ChainSpec spec = load_spec(opt, &t);

    TransientSolverConfig cfg;
    cfg.eps_ladder = parse_ladder(eps_text);
    cfg.method = method == "mc" ? TransientSolverConfig::Method::MonteCarlo
                                : TransientSolverConfig::Method::Expm;
    cfg.paths = paths;
    cfg.jump_cap = jump_cap > 0 ? jump_cap : std::max(10000000L / paths, 100L);
    cfg.rng_seed = seed;

    double gamma_span = std::max(max_abs_gamma(spec), std::abs(t.order.gamma()));
    for (double eps : cfg.eps_ladder)
        if (gamma_span / eps > kRangeCap)
            throw ValidationError(
                "epsilon ladder out of range: exponent magnitude " +
                std::to_string(gamma_span / eps) + " exceeds " +
                std::to_string(kRangeCap) + " at eps = " + std::to_string(eps) +
                "; use larger eps or smaller exponents");

    Hierarchy h = build_hierarchy(spec);
    MetastableDistribution md = metastable_all(h, t);
    ComparisonReport rep = compare(h, t, md, cfg);

    std::string text;
    if (opt.format == "text")
        text = comparison_report_text(h, rep);
    else if (opt.format == "csv")
        text = comparison_report_csv(h, rep);
    else
        text = comparison_report_json(h, rep);
    emit(opt, text);

    bool pass = rep.monotone && rep.final_error() <= tol;
    return pass ? kExitOk : kExitVerification;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hierarchy of reduced Markov chains and metastable "
                 "distributions for rates alpha*eps^beta*exp(-gamma/eps)"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string time_text, from = "all", eps_text, method = "expm";
    long paths = 10000, jump_cap = 0;
    std::uint64_t seed = 1;
    double tol = 0.05;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", opt.spec_path, "chain JSON file")->required();
        sub->add_flag("--repair", opt.repair, "replace zero rates by a fast-decaying rate");
        sub->add_option("--format", opt.format, "json | text | csv")
            ->check(CLI::IsMember({"json", "text", "csv"}));
        sub->add_option("--output", opt.output, "write the report to a file");
    };

    CLI::App* hier = app.add_subcommand("hierarchy", "build and print the hierarchy");
    add_common(hier);

    CLI::App* meta = app.add_subcommand("metastable", "compute the limiting distribution");
    add_common(meta);
    meta->add_option("--time", time_text, "time scale C,B,LAMBDA")->required();
    meta->add_option("--from", from, "start state label or 'all'");

    CLI::App* verify = app.add_subcommand("verify", "check predictions numerically");
    add_common(verify);
    verify->add_option("--time", time_text, "time scale C,B,LAMBDA")->required();
    verify->add_option("--eps", eps_text, "decreasing epsilon ladder E1,E2,...")->required();
    verify->add_option("--method", method, "expm | mc")
        ->check(CLI::IsMember({"expm", "mc"}));
    verify->add_option("--paths", paths, "Monte Carlo path count");
    verify->add_option("--jump-cap", jump_cap, "per-path jump cap");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--tol", tol, "final max-error tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (hier->parsed()) return cmd_hierarchy(opt);
        if (meta->parsed()) return cmd_metastable(opt, time_text, from);
        return cmd_verify(opt, time_text, eps_text, method, paths, jump_cap,
                          seed, tol);
    } catch (const CriticalTimeScale& e) {
        std::cerr << "critical time scale: " << e.what() << "\n";
        for (const auto& [rank, cluster] : e.entries)
            std::cerr << "  commensurate at rank " << rank << ", cluster "
                      << cluster << "\n";
        return kExitCritical;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
