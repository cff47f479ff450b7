#include "hscm/entropy.hpp"
#include "hscm/error.hpp"
#include "hscm/graphon.hpp"
#include "hscm/params.hpp"
#include "hscm/sampler.hpp"
#include "hscm/scm.hpp"
#include "hscm/stats.hpp"
#include "hscm/theory.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace hscm;

namespace {

Graph sample(const EnsembleParams& p, std::uint64_t seed, const std::string& sampler, const std::string& growth)
{
    if (sampler == "growing")
        return sample_graph_growing(p, seed, p.n(),
                                    growth == "poisson" ? GrowthVariant::PoissonExact : GrowthVariant::Increment)
            .graph;
    const auto c = sample_coordinates(p, seed);
    if (sampler == "naive")
        return sample_graph_naive(c, seed);
    if (sampler == "fast")
        return sample_graph_fast(c, seed);
    throw DomainError("unknown sampler '" + sampler + "'");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "hypersoft configuration model core";

    auto base = py::register_exception<Error>(m, "HscmError");
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<EnsembleParams>(m, "EnsembleParams")
        .def(py::init(&derive_params), py::arg("gamma"), py::arg("nu"), py::arg("n"))
        .def_property_readonly("gamma", &EnsembleParams::gamma)
        .def_property_readonly("nu", &EnsembleParams::nu)
        .def_property_readonly("n", &EnsembleParams::n)
        .def_property_readonly("beta", &EnsembleParams::beta)
        .def_property_readonly("alpha", &EnsembleParams::alpha)
        .def_property_readonly("r_n", &EnsembleParams::r_n)
        .def("__repr__", [](const EnsembleParams& p) {
            return "EnsembleParams(gamma=" + std::to_string(p.gamma()) + ", nu=" + std::to_string(p.nu())
                   + ", n=" + std::to_string(p.n()) + ")";
        });

    m.def("w_fermi_dirac", &w_fermi_dirac, py::arg("x"), py::arg("y"));
    m.def("w_classical", &w_classical, py::arg("x"), py::arg("y"));
    m.def("mu_n_quantile", &mu_n_quantile, py::arg("params"), py::arg("u"));

    m.def(
        "sample_coordinates",
        [](const EnsembleParams& p, std::uint64_t seed) { return sample_coordinates(p, seed).coords; },
        py::arg("params"), py::arg("seed"));
    m.def(
        "sample_graph",
        [](const EnsembleParams& p, std::uint64_t seed, const std::string& sampler, const std::string& growth) {
            return sample(p, seed, sampler, growth).edges;
        },
        py::arg("params"), py::arg("seed"), py::arg("sampler") = "fast", py::arg("growth") = "poisson",
        "Edge list [(u, v), ...] with u < v, sorted.");

    m.def(
        "degree_pmf",
        [](const EnsembleParams& p, std::int64_t k_max) { return DegreeLaw(p).pmf_table(k_max); },
        py::arg("params"), py::arg("k_max"));
    m.def(
        "degree_pmf_oracle",
        [](const EnsembleParams& p, std::int64_t k) { return mixed_poisson_pmf_oracle(pareto_mixing(p), k); },
        py::arg("params"), py::arg("k"));
    m.def("finite_n_degree_pmf", &finite_n_degree_pmf, py::arg("params"), py::arg("k_max"));
    m.def("expected_avg_degree_finite_n", &expected_avg_degree_finite_n, py::arg("params"));
    m.def("expected_avg_degree_classical", &expected_avg_degree_classical, py::arg("params"));

    m.def(
        "graphon_entropy",
        [](const EnsembleParams& p, const std::string& kernel) { return graphon_entropy(p, kernel_from_string(kernel)); },
        py::arg("params"), py::arg("kernel") = "fermi-dirac");
    m.def(
        "gibbs_entropy_bounds",
        [](const EnsembleParams& p) {
            const auto r = gibbs_entropy_bounds(p);
            py::dict d;
            d["sigma"] = r.sigma;
            d["sigma_averaged"] = r.sigma_averaged;
            d["lower"] = r.gibbs_lower;
            d["upper"] = r.gibbs_upper;
            d["lower_rescaled"] = r.lower_rescaled();
            d["upper_rescaled"] = r.upper_rescaled();
            d["s_m"] = r.s_m;
            d["m"] = r.partition.m;
            return d;
        },
        py::arg("params"));

    py::class_<ScmInstance>(m, "ScmInstance")
        .def_readonly("expected_degrees", &ScmInstance::expected_degrees)
        .def_readonly("multipliers", &ScmInstance::multipliers)
        .def_readonly("residual", &ScmInstance::residual)
        .def_readonly("iterations", &ScmInstance::iterations)
        .def("edge_probability", &ScmInstance::edge_probability);
    m.def(
        "solve_scm", [](const std::vector<double>& k, double tol) { return solve_scm(k, tol); }, py::arg("k"),
        py::arg("tol") = 1e-10);
    m.def("scm_expected_degrees", &scm_expected_degrees, py::arg("multipliers"));

    m.def(
        "tail_exponent",
        [](const std::vector<std::int64_t>& degrees, std::int64_t k_min) {
            DegreeHistogram h(static_cast<std::int64_t>(degrees.size()));
            h.add_degrees(degrees);
            return tail_fit(h, k_min).alpha;
        },
        py::arg("degrees"), py::arg("k_min"));
    m.def("tv_distance", &tv_distance, py::arg("a"), py::arg("b"), py::arg("k_max") = 100);
}
