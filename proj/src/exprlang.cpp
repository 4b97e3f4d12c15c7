#include "rglt/exprlang.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <vector>

namespace rglt::exprlang {

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                         ": " + what),
      line(line),
      column(column) {}

enum class Op {
    Number, Var,
    Neg, Not,
    Add, Sub, Mul, Div, Pow,
    Lt, Le, Gt, Ge,
    And, Or,
    Sin, Cos, Exp, Abs, Sqrt, Min, Max,
};

struct Expr::Node {
    Op op;
    double number = 0.0;
    int var = 0;  // 1-based
    std::vector<std::shared_ptr<const Node>> args;
};

using NodePtr = std::shared_ptr<const Expr::Node>;

namespace {

NodePtr make(Op op, std::vector<NodePtr> args = {}) {
    auto n = std::make_shared<Expr::Node>();
    n->op = op;
    n->args = std::move(args);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Number;
    n->number = v;
    return n;
}

NodePtr make_var(int idx) {
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::Var;
    n->var = idx;
    return n;
}

bool is_bool_op(Op op) {
    switch (op) {
        case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge:
        case Op::And: case Op::Or: case Op::Not:
            return true;
        default:
            return false;
    }
}

struct Token {
    enum Kind { Number, Ident, Symbol, End } kind;
    std::string text;
    double number = 0.0;
    int line = 1, column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
        tok_ = Token{Token::End, "", 0.0, line_, col_};
        if (pos_ >= src_.size()) return;
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            tok_.kind = Token::Number;
            tok_.number = v;
            tok_.text.assign(begin, static_cast<std::size_t>(end - begin));
            while (src_.data() + pos_ != end) bump();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = Token::Ident;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        // two-char comparisons first
        if ((c == '<' || c == '>') && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
            tok_.kind = Token::Symbol;
            tok_.text = std::string(1, c) + "=";
            bump();
            bump();
            return;
        }
        if (std::string_view("+-*/^()<>,").find(c) != std::string_view::npos) {
            tok_.kind = Token::Symbol;
            tok_.text = std::string(1, c);
            bump();
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

}  // namespace

class Parser {
public:
    Parser(std::string_view src, Context context) : lex_(src), context_(context) {}

    Expr run() {
        NodePtr root = parse_or();
        expect_end();
        const bool root_bool = is_bool_op(root->op);
        if (context_ == Context::Scalar && root_bool)
            throw ParseError(1, 1, "boolean expression in scalar context");
        if (context_ == Context::Predicate && !root_bool)
            throw ParseError(1, 1, "predicate context requires a boolean root");
        return Expr(std::move(root), context_);
    }

private:
    NodePtr parse_or() {
        NodePtr lhs = parse_and();
        while (is_ident("or")) {
            Token t = lex_.take();
            require_bool(lhs, t);
            NodePtr rhs = parse_and();
            require_bool(rhs, t);
            lhs = make(Op::Or, {lhs, rhs});
        }
        return lhs;
    }

    NodePtr parse_and() {
        NodePtr lhs = parse_not();
        while (is_ident("and")) {
            Token t = lex_.take();
            require_bool(lhs, t);
            NodePtr rhs = parse_not();
            require_bool(rhs, t);
            lhs = make(Op::And, {lhs, rhs});
        }
        return lhs;
    }

    NodePtr parse_not() {
        if (is_ident("not")) {
            Token t = lex_.take();
            check_predicate_context(t);
            NodePtr arg = parse_not();
            require_bool(arg, t);
            return make(Op::Not, {arg});
        }
        return parse_comparison();
    }

    NodePtr parse_comparison() {
        NodePtr lhs = parse_additive();
        if (lex_.peek().kind == Token::Symbol &&
            (lex_.peek().text == "<" || lex_.peek().text == "<=" || lex_.peek().text == ">" ||
             lex_.peek().text == ">=")) {
            Token t = lex_.take();
            check_predicate_context(t);
            require_scalar(lhs, t);
            NodePtr rhs = parse_additive();
            require_scalar(rhs, t);
            Op op = t.text == "<" ? Op::Lt : t.text == "<=" ? Op::Le : t.text == ">" ? Op::Gt : Op::Ge;
            return make(op, {lhs, rhs});
        }
        return lhs;
    }

    NodePtr parse_additive() {
        NodePtr lhs = parse_multiplicative();
        while (lex_.peek().kind == Token::Symbol &&
               (lex_.peek().text == "+" || lex_.peek().text == "-")) {
            Token t = lex_.take();
            require_scalar(lhs, t);
            NodePtr rhs = parse_multiplicative();
            require_scalar(rhs, t);
            lhs = make(t.text == "+" ? Op::Add : Op::Sub, {lhs, rhs});
        }
        return lhs;
    }

    NodePtr parse_multiplicative() {
        NodePtr lhs = parse_unary();
        while (lex_.peek().kind == Token::Symbol &&
               (lex_.peek().text == "*" || lex_.peek().text == "/")) {
            Token t = lex_.take();
            require_scalar(lhs, t);
            NodePtr rhs = parse_unary();
            require_scalar(rhs, t);
            lhs = make(t.text == "*" ? Op::Mul : Op::Div, {lhs, rhs});
        }
        return lhs;
    }

    NodePtr parse_unary() {
        // unary minus binds looser than ^, so -2^2 is -(2^2)
        if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "-") {
            Token t = lex_.take();
            NodePtr arg = parse_unary();
            require_scalar(arg, t);
            return make(Op::Neg, {arg});
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (lex_.peek().kind == Token::Symbol && lex_.peek().text == "^") {
            Token t = lex_.take();
            require_scalar(base, t);
            NodePtr exp = parse_unary();  // right-assoc, allows 2^-3
            require_scalar(exp, t);
            return make(Op::Pow, {base, exp});
        }
        return base;
    }

    NodePtr parse_primary() {
        Token t = lex_.take();
        if (t.kind == Token::Number) return make_number(t.number);
        if (t.kind == Token::Symbol && t.text == "(") {
            NodePtr inner = parse_or();
            expect_symbol(")");
            return inner;
        }
        if (t.kind == Token::Ident) {
            if (t.text.size() == 2 && t.text[0] == 'x' && t.text[1] >= '1' && t.text[1] <= '9')
                return make_var(t.text[1] - '0');
            Op fn;
            int arity = 1;
            if (t.text == "sin") fn = Op::Sin;
            else if (t.text == "cos") fn = Op::Cos;
            else if (t.text == "exp") fn = Op::Exp;
            else if (t.text == "abs") fn = Op::Abs;
            else if (t.text == "sqrt") fn = Op::Sqrt;
            else if (t.text == "min") { fn = Op::Min; arity = 2; }
            else if (t.text == "max") { fn = Op::Max; arity = 2; }
            else throw ParseError(t.line, t.column, "unknown identifier '" + t.text + "'");
            expect_symbol("(");
            std::vector<NodePtr> args;
            for (int a = 0; a < arity; ++a) {
                if (a) expect_symbol(",");
                NodePtr arg = parse_or();
                require_scalar(arg, t);
                args.push_back(std::move(arg));
            }
            expect_symbol(")");
            return make(fn, std::move(args));
        }
        throw ParseError(t.line, t.column, "expected a value, got '" + t.text + "'");
    }

    bool is_ident(std::string_view name) const {
        return lex_.peek().kind == Token::Ident && lex_.peek().text == name;
    }

    void expect_symbol(std::string_view sym) {
        Token t = lex_.take();
        if (t.kind != Token::Symbol || t.text != sym)
            throw ParseError(t.line, t.column, "expected '" + std::string(sym) + "'");
    }

    void expect_end() {
        const Token& t = lex_.peek();
        if (t.kind != Token::End)
            throw ParseError(t.line, t.column, "unexpected trailing '" + t.text + "'");
    }

    void check_predicate_context(const Token& t) const {
        if (context_ != Context::Predicate)
            throw ParseError(t.line, t.column, "boolean operator in scalar context");
    }

    void require_scalar(const NodePtr& n, const Token& t) const {
        if (is_bool_op(n->op))
            throw ParseError(t.line, t.column, "boolean value where a scalar is required");
    }

    void require_bool(const NodePtr& n, const Token& t) const {
        if (!is_bool_op(n->op))
            throw ParseError(t.line, t.column, "scalar value where a boolean is required");
    }

    Lexer lex_;
    Context context_;
};

Expr parse(std::string_view src, Context context) { return Parser(src, context).run(); }

namespace {

double eval_scalar_node(const Expr::Node& n, std::span<const double> point);

bool eval_bool_node(const Expr::Node& n, std::span<const double> point) {
    switch (n.op) {
        case Op::Lt: return eval_scalar_node(*n.args[0], point) < eval_scalar_node(*n.args[1], point);
        case Op::Le: return eval_scalar_node(*n.args[0], point) <= eval_scalar_node(*n.args[1], point);
        case Op::Gt: return eval_scalar_node(*n.args[0], point) > eval_scalar_node(*n.args[1], point);
        case Op::Ge: return eval_scalar_node(*n.args[0], point) >= eval_scalar_node(*n.args[1], point);
        case Op::And: return eval_bool_node(*n.args[0], point) && eval_bool_node(*n.args[1], point);
        case Op::Or: return eval_bool_node(*n.args[0], point) || eval_bool_node(*n.args[1], point);
        case Op::Not: return !eval_bool_node(*n.args[0], point);
        default: throw EvalError("internal: boolean evaluation of a scalar node");
    }
}

double eval_scalar_node(const Expr::Node& n, std::span<const double> point) {
    switch (n.op) {
        case Op::Number: return n.number;
        case Op::Var:
            if (n.var > static_cast<int>(point.size()))
                throw EvalError("unbound variable x" + std::to_string(n.var) + " for a " +
                                std::to_string(point.size()) + "-dimensional point");
            return point[static_cast<std::size_t>(n.var - 1)];
        case Op::Neg: return -eval_scalar_node(*n.args[0], point);
        case Op::Add: return eval_scalar_node(*n.args[0], point) + eval_scalar_node(*n.args[1], point);
        case Op::Sub: return eval_scalar_node(*n.args[0], point) - eval_scalar_node(*n.args[1], point);
        case Op::Mul: return eval_scalar_node(*n.args[0], point) * eval_scalar_node(*n.args[1], point);
        case Op::Div: {
            const double b = eval_scalar_node(*n.args[1], point);
            if (b == 0.0) throw EvalError("division by zero");
            return eval_scalar_node(*n.args[0], point) / b;
        }
        case Op::Pow: {
            const double r = std::pow(eval_scalar_node(*n.args[0], point),
                                      eval_scalar_node(*n.args[1], point));
            if (std::isnan(r)) throw EvalError("domain error in ^");
            return r;
        }
        case Op::Sin: return std::sin(eval_scalar_node(*n.args[0], point));
        case Op::Cos: return std::cos(eval_scalar_node(*n.args[0], point));
        case Op::Exp: return std::exp(eval_scalar_node(*n.args[0], point));
        case Op::Abs: return std::abs(eval_scalar_node(*n.args[0], point));
        case Op::Sqrt: {
            const double a = eval_scalar_node(*n.args[0], point);
            if (a < 0.0) throw EvalError("sqrt of a negative value");
            return std::sqrt(a);
        }
        case Op::Min:
            return std::min(eval_scalar_node(*n.args[0], point), eval_scalar_node(*n.args[1], point));
        case Op::Max:
            return std::max(eval_scalar_node(*n.args[0], point), eval_scalar_node(*n.args[1], point));
        default: throw EvalError("internal: scalar evaluation of a boolean node");
    }
}

}  // namespace

Value eval(const Expr& e, std::span<const double> point) {
    if (is_bool_op(e.root().op)) return eval_bool_node(e.root(), point);
    return eval_scalar_node(e.root(), point);
}

double eval_scalar(const Expr& e, std::span<const double> point) {
    return eval_scalar_node(e.root(), point);
}

bool eval_predicate(const Expr& e, std::span<const double> point) {
    return eval_bool_node(e.root(), point);
}

namespace {

// precedence levels for printing, mirroring the parser
int precedence(Op op) {
    switch (op) {
        case Op::Or: return 0;
        case Op::And: return 1;
        case Op::Not: return 2;
        case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return 3;
        case Op::Add: case Op::Sub: return 4;
        case Op::Mul: case Op::Div: return 5;
        case Op::Neg: return 6;
        case Op::Pow: return 7;
        default: return 8;
    }
}

void print_node(const Expr::Node& n, std::string& out, int parent_prec, bool right_side) {
    const int prec = precedence(n.op);
    const bool parens = prec < parent_prec || (prec == parent_prec && right_side);
    auto binary = [&](const char* sym) {
        if (parens) out += '(';
        // ^ is right-assoc: its left child needs parens at equal precedence,
        // the right one does not; the left-assoc operators are the mirror case
        const bool right_assoc = n.op == Op::Pow;
        print_node(*n.args[0], out, prec, right_assoc);
        out += sym;
        print_node(*n.args[1], out, prec, !right_assoc);
        if (parens) out += ')';
    };
    switch (n.op) {
        case Op::Number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", n.number);
            out += buf;
            return;
        }
        case Op::Var: out += "x" + std::to_string(n.var); return;
        case Op::Neg:
            if (parens) out += '(';
            out += '-';
            print_node(*n.args[0], out, prec, false);
            if (parens) out += ')';
            return;
        case Op::Not:
            if (parens) out += '(';
            out += "not ";
            print_node(*n.args[0], out, prec, false);
            if (parens) out += ')';
            return;
        case Op::Add: binary(" + "); return;
        case Op::Sub: binary(" - "); return;
        case Op::Mul: binary("*"); return;
        case Op::Div: binary("/"); return;
        case Op::Pow: binary("^"); return;
        case Op::Lt: binary(" < "); return;
        case Op::Le: binary(" <= "); return;
        case Op::Gt: binary(" > "); return;
        case Op::Ge: binary(" >= "); return;
        case Op::And: binary(" and "); return;
        case Op::Or: binary(" or "); return;
        case Op::Sin: case Op::Cos: case Op::Exp: case Op::Abs: case Op::Sqrt: {
            const char* name = n.op == Op::Sin ? "sin" : n.op == Op::Cos ? "cos"
                               : n.op == Op::Exp ? "exp" : n.op == Op::Abs ? "abs" : "sqrt";
            out += name;
            out += '(';
            print_node(*n.args[0], out, 0, false);
            out += ')';
            return;
        }
        case Op::Min: case Op::Max:
            out += n.op == Op::Min ? "min(" : "max(";
            print_node(*n.args[0], out, 0, false);
            out += ", ";
            print_node(*n.args[1], out, 0, false);
            out += ')';
            return;
    }
}

bool nodes_equal(const Expr::Node& a, const Expr::Node& b) {
    if (a.op != b.op || a.args.size() != b.args.size()) return false;
    if (a.op == Op::Number) {
        // bit-level so that -0.0 and NaN literals round trip faithfully
        return std::memcmp(&a.number, &b.number, sizeof(double)) == 0;
    }
    if (a.op == Op::Var) return a.var == b.var;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!nodes_equal(*a.args[i], *b.args[i])) return false;
    return true;
}

int max_var_node(const Expr::Node& n) {
    int m = n.op == Op::Var ? n.var : 0;
    for (const auto& a : n.args) m = std::max(m, max_var_node(*a));
    return m;
}

}  // namespace

bool Expr::operator==(const Expr& other) const {
    return context_ == other.context_ && nodes_equal(*node_, *other.node_);
}

std::string to_string(const Expr& e) {
    std::string out;
    print_node(e.root(), out, 0, false);
    return out;
}

int max_variable(const Expr& e) { return max_var_node(e.root()); }

}  // namespace rglt::exprlang
