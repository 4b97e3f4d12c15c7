#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rglt/domain.hpp"
#include "rglt/fd_sw.hpp"
#include "rglt/fe_p1.hpp"
#include "rglt/glt_core.hpp"

namespace rglt {

/// Raised for malformed configuration input; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Domain from its JSON description, e.g.
///   {"kind":"disk","center":[0.5,0.5],"radius":0.4}
///   {"kind":"implicit","dimension":2,"predicate":"x1+x2 < 1"}
Domain parse_domain(const nlohmann::json& j);

/// Scalar coefficient from an expression string or a number.
CoefficientFn parse_coefficient(const nlohmann::json& j);

GltExpr parse_glt_expr(const nlohmann::json& j);

struct RunOptions {
    bool hermitian_part = true;
    std::int64_t symbol_samples = 0;  // 0 = 50x the spectrum
    bool closure = false;
    std::string mode = "lambda";  // or "sigma"
};

struct RunConfig {
    Domain domain = Domain::hypercube(1);
    std::string method;  // toeplitz | glt-expr | shortley-weller | fe-p1
    nlohmann::json coefficients;
    std::vector<GridSize> sweep;
    std::string outputs;  // default output directory; --out wins
    RunOptions options;
};

RunConfig parse_run_config(const nlohmann::json& j);

/// A configured method: the matrix builder (scaled as the method prescribes,
/// n^-2 for Shortley-Weller, unscaled otherwise) and its derived symbol.
struct MethodInstance {
    SeqBuilder build;
    SeparableSymbol symbol;
    bool reduced_size;  // matrices are d x d rather than N x N
};

MethodInstance instantiate_method(const RunConfig& config);

}  // namespace rglt
