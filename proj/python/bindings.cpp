#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "metachain/chain_io.hpp"
#include "metachain/report.hpp"

namespace py = pybind11;
using namespace metachain;

namespace {

std::vector<std::vector<double>> matrix_to_lists(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> out(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        out[i].resize(m.cols());
        for (int j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    }
    return out;
}

std::vector<double> vector_to_list(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hierarchy of reduced Markov chains and metastable distributions "
              "for transition rates of the form alpha * eps^beta * exp(-gamma/eps)";

    // translators run newest-first, so the subclass must be registered last
    auto base = py::register_exception<Error>(m, "MetachainError");
    py::register_exception<CriticalTimeScale>(m, "CriticalTimeScaleError",
                                              base.ptr());

    py::class_<Order>(m, "Order")
        .def_static("make", &Order::make, py::arg("alpha"), py::arg("beta"),
                    py::arg("gamma"))
        .def_static("zero", &Order::zero)
        .def_static("one", &Order::one)
        .def_property_readonly("alpha", &Order::alpha)
        .def_property_readonly("beta", &Order::beta)
        .def_property_readonly("gamma", &Order::gamma)
        .def_property_readonly("is_zero", &Order::is_zero)
        .def("evaluate", &Order::evaluate, py::arg("eps"))
        .def("recip", &Order::recip)
        .def("scaled", &Order::scaled, py::arg("c"))
        .def("__add__", [](const Order& a, const Order& b) { return a + b; })
        .def("__mul__", [](const Order& a, const Order& b) { return a * b; })
        .def("__eq__", [](const Order& a, const Order& b) { return a == b; })
        .def("__repr__", [](const Order& x) {
            std::ostringstream os;
            os << "Order(" << x << ")";
            return os.str();
        });

    py::class_<TimeScale>(m, "TimeScale")
        .def_static("make", &TimeScale::make, py::arg("c"), py::arg("b"),
                    py::arg("lam"))
        .def_property_readonly("c", &TimeScale::c)
        .def_property_readonly("b", &TimeScale::b)
        .def_property_readonly("lam", &TimeScale::lambda);

    py::class_<ChainSpec>(m, "ChainSpec")
        .def_property_readonly("states",
                               [](const ChainSpec& s) { return s.states; })
        .def("rate", [](const ChainSpec& s, int i, int j) { return s.rates[i][j]; })
        .def("set_rate",
             [](ChainSpec& s, int i, int j, const Order& q) { s.rates[i][j] = q; })
        .def("__len__", &ChainSpec::size);

    m.def("make_chain", &make_chain, py::arg("labels"));
    m.def("parse_chain_json", &parse_chain_json, py::arg("text"));
    m.def("parse_chain_file", &parse_chain_file, py::arg("path"));
    m.def("serialize_chain", &serialize_chain, py::arg("spec"));
    m.def("validate", [](const ChainSpec& spec) {
        std::vector<std::string> out;
        for (const auto& v : validate(spec)) out.push_back(v.message());
        return out;
    });
    m.def("repair_zero_rates", &repair_zero_rates, py::arg("spec"));

    py::class_<Hierarchy>(m, "Hierarchy")
        .def_property_readonly("rho", &Hierarchy::rho)
        .def_property_readonly("cluster_counts",
                               [](const Hierarchy& h) {
                                   std::vector<int> out;
                                   for (const auto& level : h.levels)
                                       out.push_back(level.cluster_count());
                                   return out;
                               })
        .def("clusters",
             [](const Hierarchy& h, int rank) {
                 std::vector<std::vector<int>> out;
                 for (int k = 0; k < h.tree.cluster_count(rank); ++k)
                     out.push_back(h.tree.resolve(rank, k));
                 return out;
             },
             py::arg("rank"))
        .def("report_json", &hierarchy_report_json)
        .def("report_text", &hierarchy_report_text);

    m.def("build_hierarchy", &build_hierarchy, py::arg("spec"));

    py::class_<MetastableDistribution>(m, "MetastableDistribution")
        .def_property_readonly(
            "nu", [](const MetastableDistribution& md) { return matrix_to_lists(md.nu); });

    m.def("metastable_all",
          [](const Hierarchy& h, const TimeScale& t) { return metastable_all(h, t); },
          py::arg("hierarchy"), py::arg("time"));
    m.def("metastable_distribution", &metastable_distribution, py::arg("hierarchy"),
          py::arg("time"), py::arg("state"));
    m.def("metastable_report_json", &metastable_report_json);

    m.def("exact_stationary",
          [](const ChainSpec& spec, double eps) {
              return vector_to_list(exact_stationary(instantiate_generator(spec, eps)));
          },
          py::arg("spec"), py::arg("eps"));
    m.def("transient_distribution",
          [](const ChainSpec& spec, double eps, double t, int start) {
              return vector_to_list(
                  transient_distribution(instantiate_generator(spec, eps), t, start));
          },
          py::arg("spec"), py::arg("eps"), py::arg("t"), py::arg("start"));

    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_property_readonly("monotone",
                               [](const ComparisonReport& r) { return r.monotone; })
        .def_property_readonly("final_error", &ComparisonReport::final_error)
        .def_property_readonly("max_errors",
                               [](const ComparisonReport& r) {
                                   std::vector<double> out;
                                   for (const auto& p : r.ladder)
                                       out.push_back(p.max_error);
                                   return out;
                               });

    m.def("verify",
          [](const Hierarchy& h, const TimeScale& t, std::vector<double> ladder,
             const std::string& method, long paths, std::uint64_t seed) {
              TransientSolverConfig cfg;
              cfg.eps_ladder = std::move(ladder);
              cfg.method = method == "mc" ? TransientSolverConfig::Method::MonteCarlo
                                          : TransientSolverConfig::Method::Expm;
              cfg.paths = paths;
              cfg.rng_seed = seed;
              MetastableDistribution md = metastable_all(h, t);
              ComparisonReport rep = compare(h, t, md, cfg);
              return py::make_tuple(rep.monotone, rep.final_error(),
                                    comparison_report_json(h, rep));
          },
          py::arg("hierarchy"), py::arg("time"), py::arg("eps_ladder"),
          py::arg("method") = "expm", py::arg("paths") = 10000,
          py::arg("seed") = 1);
}
