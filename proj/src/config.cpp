#include "rglt/config.hpp"

#include <memory>

#include "rglt/exprlang.hpp"

namespace rglt {

namespace {

std::array<double, 2> parse_point2(const nlohmann::json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(what) + ": expected [x, y]");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

Domain parse_domain(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind")) throw ConfigError("domain: missing kind");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "hypercube") return Domain::hypercube(j.at("dimension").get<int>());
        if (kind == "disk") {
            if (j.contains("center") && j.at("center").size() != 2) {
                std::vector<double> center = j.at("center").get<std::vector<double>>();
                return Domain::ball(std::move(center), j.at("radius").get<double>());
            }
            return Domain::disk(parse_point2(j.value("center", nlohmann::json{0.5, 0.5}), "center"),
                                j.at("radius").get<double>());
        }
        if (kind == "annulus")
            return Domain::annulus(parse_point2(j.value("center", nlohmann::json{0.5, 0.5}), "center"),
                                   j.at("inner_radius").get<double>(),
                                   j.at("outer_radius").get<double>());
        if (kind == "triangle") {
            const auto& v = j.at("vertices");
            if (v.size() != 3) throw ConfigError("triangle: expected 3 vertices");
            return Domain::triangle(parse_point2(v.at(0), "vertex"), parse_point2(v.at(1), "vertex"),
                                    parse_point2(v.at(2), "vertex"));
        }
        if (kind == "l_shape") return Domain::l_shape();
        if (kind == "polygon") {
            std::vector<std::array<double, 2>> verts;
            for (const auto& v : j.at("vertices")) verts.push_back(parse_point2(v, "vertex"));
            return Domain::polygon(std::move(verts));
        }
        if (kind == "implicit") {
            const int dim = j.at("dimension").get<int>();
            auto expr = std::make_shared<exprlang::Expr>(
                exprlang::parse(j.at("predicate").get<std::string>(), exprlang::Context::Predicate));
            if (exprlang::max_variable(*expr) > dim)
                throw ConfigError("implicit: predicate references a variable beyond the dimension");
            Domain d = Domain::implicit(dim, [expr](std::span<const double> p) {
                return exprlang::eval_predicate(*expr, p);
            });
            if (j.value("distance_probes", false)) d = d.with_probe_estimator();
            return d;
        }
        if (kind == "mapped") {
            const auto& rows = j.at("matrix");
            const auto n = static_cast<Eigen::Index>(rows.size());
            Eigen::MatrixXd m(n, n);
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < n; ++c)
                    m(r, c) = rows.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c)).get<double>();
            Eigen::VectorXd shift = Eigen::VectorXd::Zero(n);
            if (j.contains("shift"))
                for (Eigen::Index r = 0; r < n; ++r)
                    shift(r) = j.at("shift").at(static_cast<std::size_t>(r)).get<double>();
            return Domain::mapped(m, shift, parse_domain(j.at("inner")));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("domain '" + kind + "': " + e.what());
    }
    throw ConfigError("domain: unknown kind '" + kind + "'");
}

CoefficientFn parse_coefficient(const nlohmann::json& j) {
    try {
        if (j.is_number()) return CoefficientFn::constant(Complex(j.get<double>(), 0.0));
        if (j.is_string()) return CoefficientFn::expression(j.get<std::string>());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("coefficient: ") + e.what());
    }
    throw ConfigError("coefficient: expected an expression string or a number");
}

GltExpr parse_glt_expr(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("op")) throw ConfigError("glt expr: missing op");
    const std::string op = j.at("op").get<std::string>();
    try {
        if (op == "toeplitz") return GltExpr::toeplitz(Stencil::from_json(j.at("stencil")));
        if (op == "diag") {
            const int dim = j.at("dimension").get<int>();
            const CoefficientFn a = parse_coefficient(j.at("a"));
            const std::string sampling = j.value("sampling", "D");
            return sampling == "I" ? GltExpr::diag_i(dim, a) : GltExpr::diag_d(dim, a);
        }
        if (op == "zero") return GltExpr::zero(j.at("dimension").get<int>());
        if (op == "sum" || op == "product") {
            std::vector<GltExpr> children;
            for (const auto& c : j.at(op == "sum" ? "terms" : "factors"))
                children.push_back(parse_glt_expr(c));
            return op == "sum" ? GltExpr::sum(std::move(children))
                               : GltExpr::product(std::move(children));
        }
        if (op == "scale") {
            const auto& v = j.at("value");
            const Complex factor = v.is_number()
                                       ? Complex(v.get<double>(), 0.0)
                                       : Complex(v.at(0).get<double>(), v.at(1).get<double>());
            return GltExpr::scaled(factor, parse_glt_expr(j.at("child")));
        }
        if (op == "adjoint") return GltExpr::adjoint(parse_glt_expr(j.at("child")));
        if (op == "reduce")
            return GltExpr::reduced(parse_domain(j.at("domain")), parse_glt_expr(j.at("child")));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("glt expr '" + op + "': " + e.what());
    }
    throw ConfigError("glt expr: unknown op '" + op + "'");
}

namespace {

// toeplitz / glt-expr configs without a domain: take d from the stencil
int dimension_hint(const nlohmann::json& j) {
    const nlohmann::json coeffs = j.value("coefficients", nlohmann::json::object());
    if (coeffs.contains("stencil")) return Stencil::from_json(coeffs.at("stencil")).dim();
    if (coeffs.contains("expr")) return parse_glt_expr(coeffs.at("expr")).dim();
    throw ConfigError("config: cannot infer the dimension; provide a domain");
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
    RunConfig config;
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    config.method = j.value("method", "");
    if (config.method != "toeplitz" && config.method != "glt-expr" &&
        config.method != "shortley-weller" && config.method != "fe-p1")
        throw ConfigError("config: method must be toeplitz | glt-expr | shortley-weller | fe-p1");

    if (j.contains("domain"))
        config.domain = parse_domain(j.at("domain"));
    else if (config.method == "toeplitz" || config.method == "glt-expr")
        config.domain = Domain::hypercube(dimension_hint(j));
    else
        throw ConfigError("config: a domain is required for " + config.method);

    config.coefficients = j.value("coefficients", nlohmann::json::object());

    if (!j.contains("sweep") || !j.at("sweep").is_array() || j.at("sweep").empty())
        throw ConfigError("config: sweep must be a nonempty array");
    std::int64_t prev_min = 0;
    for (const auto& item : j.at("sweep")) {
        GridSize n = item.is_array()
                         ? GridSize(MultiIndex(item.get<std::vector<std::int64_t>>()))
                         : GridSize::cubic(config.domain.dim(), item.get<std::int64_t>());
        if (n.dim() != config.domain.dim())
            throw ConfigError("config: sweep entry dimension mismatch");
        if (n.min_extent() <= prev_min)
            throw ConfigError("config: sweep must be strictly increasing in min(n)");
        prev_min = n.min_extent();
        config.sweep.push_back(std::move(n));
    }

    config.outputs = j.value("outputs", "");

    const nlohmann::json opts = j.value("options", nlohmann::json::object());
    config.options.hermitian_part = opts.value("hermitian_part", true);
    config.options.symbol_samples = opts.value("symbol_samples", std::int64_t{0});
    config.options.closure = opts.value("closure", false);
    config.options.mode = opts.value("mode", "lambda");
    if (config.options.mode != "lambda" && config.options.mode != "sigma")
        throw ConfigError("config: options.mode must be lambda or sigma");
    return config;
}

namespace {

SWProblem parse_sw_problem(const RunConfig& config) {
    const int d = config.domain.dim();
    const auto& coeffs = config.coefficients;
    SWProblem problem = SWProblem::poisson(config.domain);
    if (coeffs.contains("a")) {
        if (static_cast<int>(coeffs.at("a").size()) != d)
            throw ConfigError("shortley-weller: need one diffusion entry per axis");
        problem.diffusion.clear();
        for (const auto& a : coeffs.at("a")) problem.diffusion.push_back(parse_coefficient(a));
    }
    if (coeffs.contains("b")) {
        if (static_cast<int>(coeffs.at("b").size()) != d)
            throw ConfigError("shortley-weller: need one convection entry per axis");
        problem.convection.clear();
        for (const auto& b : coeffs.at("b")) problem.convection.push_back(parse_coefficient(b));
    }
    if (coeffs.contains("c")) problem.reaction = parse_coefficient(coeffs.at("c"));
    if (coeffs.contains("f")) problem.rhs = parse_coefficient(coeffs.at("f"));
    return problem;
}

P1Problem parse_p1_problem(const RunConfig& config) {
    if (config.domain.dim() != 2) throw ConfigError("fe-p1: the method is 2D only");
    P1Problem problem = P1Problem::laplace(config.domain);
    const auto& coeffs = config.coefficients;
    if (coeffs.contains("A")) {
        const auto& rows = coeffs.at("A");
        if (rows.size() != 2 || rows.at(0).size() != 2 || rows.at(1).size() != 2)
            throw ConfigError("fe-p1: A must be a 2x2 matrix of coefficients");
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = 0; c < 2; ++c)
                problem.diffusion[r][c] = parse_coefficient(rows.at(r).at(c));
    }
    if (coeffs.contains("b")) {
        if (coeffs.at("b").size() != 2) throw ConfigError("fe-p1: b must have 2 entries");
        for (std::size_t r = 0; r < 2; ++r)
            problem.convection[r] = parse_coefficient(coeffs.at("b").at(r));
    }
    if (coeffs.contains("c")) problem.reaction = parse_coefficient(coeffs.at("c"));
    return problem;
}

}  // namespace

MethodInstance instantiate_method(const RunConfig& config) {
    if (config.method == "toeplitz") {
        if (!config.coefficients.contains("stencil"))
            throw ConfigError("toeplitz: coefficients.stencil is required");
        const Stencil stencil = Stencil::from_json(config.coefficients.at("stencil"));
        const GltExpr expr = GltExpr::toeplitz(stencil);
        return {[expr](const GridSize& n) { return build_matrix_dense(expr, n); },
                derive_symbol(expr), false};
    }
    if (config.method == "glt-expr") {
        if (!config.coefficients.contains("expr"))
            throw ConfigError("glt-expr: coefficients.expr is required");
        const GltExpr expr = parse_glt_expr(config.coefficients.at("expr"));
        return {[expr](const GridSize& n) { return build_matrix_dense(expr, n); },
                derive_symbol(expr), false};
    }
    if (config.method == "shortley-weller") {
        const SWProblem problem = parse_sw_problem(config);
        auto build = [problem](const GridSize& n) {
            const double scale = 1.0 / static_cast<double>(n.min_extent() * n.min_extent());
            return CMat(scale * Eigen::SparseMatrix<double>(assemble_sw(problem, n).matrix)
                                    .cast<Complex>());
        };
        return {build, sw_symbol(problem, MultiIndex::uniform(config.domain.dim(), 1)), true};
    }
    // fe-p1
    const P1Problem problem = parse_p1_problem(config);
    auto build = [problem](const GridSize& n) {
        return CMat(assemble_p1(problem, n.min_extent()).matrix);
    };
    return {build, fe_symbol_subdomain(problem), true};
}

}  // namespace rglt
