#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace rglt::exprlang {

/// Where an expression is allowed to produce booleans. Scalar context rejects
/// comparisons and boolean connectives; predicate context requires a boolean
/// root.
enum class Context { Scalar, Predicate };

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(int line, int column, const std::string& what);
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Expr {
public:
    struct Node;

    Context context() const { return context_; }
    bool operator==(const Expr& other) const;

    const Node& root() const { return *node_; }

private:
    friend Expr parse(std::string_view, Context);
    friend class Parser;
    Expr(std::shared_ptr<const Node> node, Context context)
        : node_(std::move(node)), context_(context) {}
    std::shared_ptr<const Node> node_;
    Context context_;
};

/// Grammar: literals; variables x1..x9; unary -; + - * / ^ (right-assoc, binds
/// tighter than unary -); sin cos exp abs sqrt min max; < <= > >= and/or/not
/// in predicate context only.
Expr parse(std::string_view src, Context context);

using Value = std::variant<double, bool>;

/// IEEE double evaluation. Throws EvalError on division by zero, sqrt of a
/// negative, NaN from pow, or a variable index beyond the point dimension.
Value eval(const Expr& e, std::span<const double> point);

double eval_scalar(const Expr& e, std::span<const double> point);
bool eval_predicate(const Expr& e, std::span<const double> point);

/// Canonical rendering; parse(to_string(e), ctx) reproduces e exactly.
std::string to_string(const Expr& e);

/// Highest variable index referenced (0 when the expression is constant).
int max_variable(const Expr& e);

}  // namespace rglt::exprlang
