#include "metachain/report.hpp"

#include <sstream>

#include <json.hpp>

namespace metachain {

namespace {

using json = nlohmann::ordered_json;

json order_json(const Order& x) {
    if (x.is_zero()) return nullptr;
    return {{"alpha", x.alpha()}, {"beta", x.beta()}, {"gamma", x.gamma()}};
}

std::string order_text(const Order& x) {
    if (x.is_zero()) return "0";
    std::ostringstream os;
    os << x.alpha();
    if (x.beta() != 0.0) os << "*eps^" << x.beta();
    if (x.gamma() != 0.0) os << "*exp(" << -x.gamma() << "/eps)";
    return os.str();
}

json cluster_labels(const Hierarchy& h, int rank, int k) {
    json out = json::array();
    for (int s : h.tree.resolve(rank, k)) out.push_back(h.spec.states[s]);
    return out;
}

} // namespace

std::string hierarchy_report_json(const Hierarchy& h) {
    json doc;
    doc["states"] = h.spec.states;
    doc["rho"] = h.rho();
    doc["ranks"] = json::array();
    for (int r = 0; r <= h.rho(); ++r) {
        const auto& level = h.levels[r];
        const int n = level.cluster_count();
        json rank;
        rank["rank"] = r;
        rank["clusters"] = json::array();
        for (int k = 0; k < n; ++k) rank["clusters"].push_back(cluster_labels(h, r, k));
        rank["Q"] = json::array();
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                if (k != l && !level.Q[k][l].is_zero())
                    rank["Q"].push_back({{"from", k},
                                         {"to", l},
                                         {"rate", order_json(level.Q[k][l])}});
        if (!level.T.empty()) {
            rank["T"] = json::array();
            for (const Order& x : level.T) rank["T"].push_back(order_json(x));
        } else {
            rank["T"] = nullptr; // infinite at rank rho
        }
        if (!level.mu.empty()) {
            rank["mu"] = json::array();
            for (size_t k = 0; k < level.mu.size(); ++k) {
                json cluster = json::array();
                for (const auto& [i, m] : level.mu[k])
                    cluster.push_back({{"member", i},
                                       {"order", order_json(m.order)},
                                       {"limit", m.limit}});
                rank["mu"].push_back(cluster);
            }
        }
        doc["ranks"].push_back(std::move(rank));
    }
    return doc.dump(2) + "\n";
}

std::string hierarchy_report_text(const Hierarchy& h) {
    std::ostringstream os;
    os << "hierarchy with " << h.spec.size() << " states, rho = " << h.rho() << "\n";
    for (int r = 0; r <= h.rho(); ++r) {
        const auto& level = h.levels[r];
        const int n = level.cluster_count();
        os << "rank " << r << " (" << n << " cluster" << (n == 1 ? "" : "s") << ")\n";
        for (int k = 0; k < n; ++k) {
            os << "  cluster " << k << " = {";
            auto states = h.tree.resolve(r, k);
            for (size_t a = 0; a < states.size(); ++a)
                os << (a ? ", " : "") << h.spec.states[states[a]];
            os << "}";
            if (!level.T.empty())
                os << "  T = " << order_text(level.T[k]);
            else
                os << "  T = +inf";
            os << "\n";
        }
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                if (k != l && !level.Q[k][l].is_zero())
                    os << "  Q[" << k << "->" << l
                       << "] = " << order_text(level.Q[k][l]) << "\n";
        for (size_t k = 0; k < level.mu.size(); ++k) {
            os << "  mu for next-rank cluster " << k << ":";
            for (const auto& [i, m] : level.mu[k])
                os << " " << i << " -> " << m.limit;
            os << "\n";
        }
    }
    return os.str();
}

namespace {

json time_json(const TimeScale& t) {
    return {{"c", t.c()}, {"b", t.b()}, {"lambda", t.lambda()}};
}

} // namespace

std::string metastable_report_json(const Hierarchy& h,
                                   const MetastableDistribution& md) {
    json doc;
    doc["time"] = time_json(md.time);
    doc["states"] = h.spec.states;
    doc["nu"] = json::array();
    for (int i = 0; i < md.nu.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < md.nu.cols(); ++j) row.push_back(md.nu(i, j));
        doc["nu"].push_back(std::move(row));
    }
    doc["trap_trace"] = json::array();
    for (size_t i = 0; i < md.trace.size(); ++i) {
        const TrapTrace& tr = md.trace[i];
        json entry;
        entry["start"] = h.spec.states[i];
        entry["r"] = tr.analysis.r;
        entry["k"] = tr.analysis.k;
        entry["L"] = tr.analysis.traps;
        json eta = json::object();
        for (const auto& [j, p] : tr.eta) eta[h.spec.states[j]] = p;
        entry["eta"] = std::move(eta);
        doc["trap_trace"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

std::string metastable_report_text(const Hierarchy& h,
                                   const MetastableDistribution& md) {
    std::ostringstream os;
    os << "metastable distribution at t(eps) = "
       << order_text(md.time.order) << "\n";
    for (int i = 0; i < md.nu.rows(); ++i) {
        os << "  from " << h.spec.states[i] << ":";
        for (int j = 0; j < md.nu.cols(); ++j) os << " " << md.nu(i, j);
        os << "\n";
    }
    return os.str();
}

std::string comparison_report_json(const Hierarchy& h, const ComparisonReport& rep) {
    json doc;
    doc["time"] = time_json(rep.time);
    doc["states"] = h.spec.states;
    doc["predicted"] = json::array();
    for (int i = 0; i < rep.predicted.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < rep.predicted.cols(); ++j)
            row.push_back(rep.predicted(i, j));
        doc["predicted"].push_back(std::move(row));
    }
    doc["ladder"] = json::array();
    for (const auto& point : rep.ladder) {
        json p;
        p["eps"] = point.eps;
        p["numeric"] = json::array();
        for (int i = 0; i < point.numeric.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < point.numeric.cols(); ++j)
                row.push_back(point.numeric(i, j));
            p["numeric"].push_back(std::move(row));
        }
        p["max_error"] = point.max_error;
        doc["ladder"].push_back(std::move(p));
    }
    doc["monotone"] = rep.monotone;
    doc["final_error"] = rep.final_error();
    return doc.dump(2) + "\n";
}

std::string comparison_report_text(const Hierarchy& h, const ComparisonReport& rep) {
    std::ostringstream os;
    os << "verification against t(eps) = " << order_text(rep.time.order) << "\n";
    for (const auto& point : rep.ladder)
        os << "  eps = " << point.eps << "  max error = " << point.max_error << "\n";
    os << "errors " << (rep.monotone ? "non-increasing" : "NOT monotone")
       << ", final = " << rep.final_error() << "\n";
    (void)h;
    return os.str();
}

std::string comparison_report_csv(const Hierarchy& h, const ComparisonReport& rep) {
    std::ostringstream os;
    os << "eps,start,state,predicted,numeric,abs_error\n";
    for (const auto& point : rep.ladder)
        for (int i = 0; i < point.numeric.rows(); ++i)
            for (int j = 0; j < point.numeric.cols(); ++j)
                os << point.eps << "," << h.spec.states[i] << ","
                   << h.spec.states[j] << "," << rep.predicted(i, j) << ","
                   << point.numeric(i, j) << ","
                   << std::abs(point.numeric(i, j) - rep.predicted(i, j)) << "\n";
    return os.str();
}

} // namespace metachain
