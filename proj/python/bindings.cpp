#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <json.hpp>

#include "rglt/exprlang.hpp"
#include "rglt/glt_core.hpp"
#include "rglt/runner.hpp"

namespace py = pybind11;
using namespace rglt;

namespace {

GridSize grid_from(const std::vector<std::int64_t>& n) { return GridSize(MultiIndex(n)); }

Domain domain_from(const std::string& json_text) {
    return parse_domain(nlohmann::json::parse(json_text));
}

RunConfig config_from(const std::string& json_text) {
    return parse_run_config(nlohmann::json::parse(json_text));
}

py::dict to_pydict(const nlohmann::json& j) {
    py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "reduced GLT toolkit: grids, domain masks, reduced assemblies and symbol checks";

    // multi-index layer
    m.def("lex_compare", [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
        const auto c = lex_compare(MultiIndex(a), MultiIndex(b));
        return c == std::strong_ordering::less ? -1 : c == std::strong_ordering::greater ? 1 : 0;
    });
    m.def("linearize", [](const std::vector<std::int64_t>& h, const std::vector<std::int64_t>& n) {
        return linearize(MultiIndex(h), grid_from(n));
    });
    m.def("delinearize", [](std::int64_t k, const std::vector<std::int64_t>& n) {
        return delinearize(k, grid_from(n)).components();
    });
    m.def("iter_range", [](const std::vector<std::int64_t>& lo, const std::vector<std::int64_t>& hi) {
        std::vector<std::vector<std::int64_t>> out;
        for (const MultiIndex& i : iter_range(MultiIndex(lo), MultiIndex(hi)))
            out.push_back(i.components());
        return out;
    });

    // domains and masks
    py::class_<Domain>(m, "Domain")
        .def_property_readonly("dim", &Domain::dim)
        .def_property_readonly("kind", &Domain::kind)
        .def("membership",
             [](const Domain& d, const std::vector<double>& p) {
                 switch (d.membership(p)) {
                     case Region::Inside: return "inside";
                     case Region::Boundary: return "boundary";
                     default: return "outside";
                 }
             })
        .def("signed_distance",
             [](const Domain& d, const std::vector<double>& p) { return d.signed_distance(p); })
        .def_property_readonly("analytic_measure", [](const Domain& d) -> py::object {
            if (auto v = d.analytic_measure()) return py::float_(*v);
            return py::none();
        });
    m.def("domain", &domain_from, "Domain from its JSON description");
    m.def("mask", [](const Domain& d, const std::vector<std::int64_t>& n, bool closure) {
        const GridMask gm = mask(d, grid_from(n), closure);
        return py::make_tuple(gm.bits, gm.count);
    }, py::arg("domain"), py::arg("n"), py::arg("closure") = true);
    m.def("boundary_band_count", [](const Domain& d, const std::vector<std::int64_t>& n, double c) {
        return boundary_band_count(d, grid_from(n), c);
    });
    m.def("near_boundary_points", [](const Domain& d, const std::vector<std::int64_t>& n, int k) {
        std::vector<std::vector<std::int64_t>> out;
        for (const MultiIndex& i : near_boundary_points(d, grid_from(n), k))
            out.push_back(i.components());
        return out;
    });
    m.def("measure_estimate", [](const Domain& d, const std::vector<std::int64_t>& n) {
        return measure_estimate(d, grid_from(n));
    });

    // generators and expressions
    m.def("toeplitz", [](const std::string& stencil_json, const std::vector<std::int64_t>& n) {
        return CMat(toeplitz(Stencil::from_json(nlohmann::json::parse(stencil_json)), grid_from(n)));
    });
    m.def("diag_d", [](const std::string& expr, const std::vector<std::int64_t>& n) {
        return CMat(diag_sampling_D(CoefficientFn::expression(expr), grid_from(n)));
    });
    m.def("diag_i", [](const std::string& expr, const std::vector<std::int64_t>& n) {
        return CMat(diag_sampling_I(CoefficientFn::expression(expr), grid_from(n)));
    });
    m.def("build_glt", [](const std::string& expr_json, const std::vector<std::int64_t>& n) {
        return build_matrix_dense(parse_glt_expr(nlohmann::json::parse(expr_json)), grid_from(n));
    });
    m.def("glt_symbol_sample",
          [](const std::string& expr_json, int nx, int ntheta, const std::string& mode) {
              const auto symbol = derive_symbol(parse_glt_expr(nlohmann::json::parse(expr_json)));
              return sample_symbol(symbol, nx, ntheta,
                                   mode == "modulus" ? SampleMode::Modulus : SampleMode::Real);
          });

    // reduction operators
    m.def("restricted", [](const std::vector<std::uint8_t>& bits, const std::vector<std::int64_t>& n,
                           const CMat& a) {
        GridMask gm{grid_from(n), bits, 0};
        for (auto b : bits) gm.count += b ? 1 : 0;
        return restricted(Projector(gm), a);
    });
    m.def("expanded", [](const std::vector<std::uint8_t>& bits, const std::vector<std::int64_t>& n,
                         const CMat& s) {
        GridMask gm{grid_from(n), bits, 0};
        for (auto b : bits) gm.count += b ? 1 : 0;
        return expanded(Projector(gm), s);
    });
    m.def("zero_out", [](const std::vector<std::uint8_t>& bits, const std::vector<std::int64_t>& n,
                         const CMat& a) {
        GridMask gm{grid_from(n), bits, 0};
        for (auto b : bits) gm.count += b ? 1 : 0;
        return zero_out(Projector(gm), a);
    });

    // spectra
    m.def("eigvals_hermitian", [](const CMat& a) { return eigvals_hermitian(a).values; });
    m.def("eigvals_general", [](const CMat& a) { return eigvals_general(a); });
    m.def("singvals", [](const CMat& a) { return singvals(a).values; });
    m.def("pseudoinverse", [](const CMat& a) { return pseudoinverse(a); });

    // symbol machinery
    m.def("acs_p", [](const CMat& c) { return acs_p(c); });
    m.def("pmea", [](const std::vector<double>& samples) {
        return pmea(std::span<const double>(samples));
    });
    m.def("compare_distributions", [](std::vector<double> a, std::vector<double> b) {
        return to_pydict(compare_distributions(std::move(a), std::move(b)).to_json());
    });

    // assemblies
    m.def("assemble_sw", [](const std::string& config_json, const std::vector<std::int64_t>& n) {
        const RunConfig config = config_from(config_json);
        if (config.method != "shortley-weller")
            throw ConfigError("assemble_sw: config method must be shortley-weller");
        // rebuild the problem through the shared parser, unscaled output
        const MethodInstance method = instantiate_method(config);
        const double scale =
            static_cast<double>(grid_from(n).min_extent() * grid_from(n).min_extent());
        return CMat(scale * method.build(grid_from(n)));
    });
    m.def("assemble_p1", [](const std::string& config_json, std::int64_t n) {
        const RunConfig config = config_from(config_json);
        if (config.method != "fe-p1") throw ConfigError("assemble_p1: config method must be fe-p1");
        const MethodInstance method = instantiate_method(config);
        return method.build(GridSize::cubic(2, n));
    });
    m.def("method_symbol_sample",
          [](const std::string& config_json, int nx, int ntheta, const std::string& mode) {
              const MethodInstance method = instantiate_method(config_from(config_json));
              return sample_symbol(method.symbol, nx, ntheta,
                                   mode == "modulus" ? SampleMode::Modulus : SampleMode::Real);
          });

    // expression language
    m.def("eval_expr", [](const std::string& src, const std::vector<double>& point) {
        const auto e = exprlang::parse(src, exprlang::Context::Scalar);
        return exprlang::eval_scalar(e, point);
    });
    m.def("eval_predicate", [](const std::string& src, const std::vector<double>& point) {
        const auto e = exprlang::parse(src, exprlang::Context::Predicate);
        return exprlang::eval_predicate(e, point);
    });
    m.def("canonical_expr", [](const std::string& src, const std::string& context) {
        return exprlang::to_string(exprlang::parse(
            src, context == "predicate" ? exprlang::Context::Predicate : exprlang::Context::Scalar));
    });

    // full command runs (the CLI surface)
    m.def("run_counts", [](const std::string& config_json, const std::filesystem::path& out) {
        return to_pydict(run_counts(config_from(config_json), out));
    });
    m.def("run_spectrum", [](const std::string& config_json, const std::filesystem::path& out) {
        return to_pydict(run_spectrum(config_from(config_json), out));
    });
    m.def("run_compare", [](const std::string& config_json, const std::filesystem::path& out) {
        return to_pydict(run_compare(config_from(config_json), out));
    });
    m.def("run_acs", [](const std::string& config_a, const std::string& config_b,
                        const std::filesystem::path& out) {
        return to_pydict(run_acs(config_from(config_a), config_from(config_b), out));
    });

    py::register_exception<ConfigError>(m, "ConfigError");

#ifdef VERSION_INFO
#define RGLT_STR(x) #x
#define RGLT_XSTR(x) RGLT_STR(x)
    m.attr("__version__") = RGLT_XSTR(VERSION_INFO);
#else
    m.attr("__version__") = "0.1.0";
#endif
}
