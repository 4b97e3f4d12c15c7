#include "rglt/glt_core.hpp"

#include <stdexcept>

namespace rglt {

namespace {
constexpr std::size_t kSeparableTermCap = 4096;
}

SpMatC toeplitz(const Stencil& stencil, const GridSize& n) {
    if (stencil.dim() != n.dim()) throw std::invalid_argument("toeplitz: dimension mismatch");
    const std::int64_t size = n.count();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(size) * stencil.support_size());
    std::int64_t row = 0;
    for (const MultiIndex& i : iter_range(MultiIndex::uniform(n.dim(), 1), n.extents())) {
        for (const auto& [offset, value] : stencil.coefficients()) {
            // column j with i - j = offset
            MultiIndex j = i;
            bool in_range = true;
            for (int r = 0; r < n.dim() && in_range; ++r) {
                j[r] = i[r] - offset[static_cast<std::size_t>(r)];
                in_range = j[r] >= 1 && j[r] <= n.extent(r);
            }
            if (in_range)
                trips.emplace_back(static_cast<int>(row), static_cast<int>(linearize(j, n) - 1),
                                   value);
        }
        ++row;
    }
    SpMatC out(size, size);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

namespace {

SpMatC diagonal_from(const CoefficientFn& a, const GridSize& n, bool interior_grid) {
    const std::int64_t size = n.count();
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(size));
    std::vector<double> p(static_cast<std::size_t>(n.dim()));
    std::int64_t row = 0;
    for (const MultiIndex& i : iter_range(MultiIndex::uniform(n.dim(), 1), n.extents())) {
        for (int r = 0; r < n.dim(); ++r) {
            const double denom = static_cast<double>(n.extent(r)) + (interior_grid ? 1.0 : 0.0);
            p[static_cast<std::size_t>(r)] = static_cast<double>(i[r]) / denom;
        }
        const Complex v = a(p);
        if (v != Complex(0.0, 0.0))
            trips.emplace_back(static_cast<int>(row), static_cast<int>(row), v);
        ++row;
    }
    SpMatC out(size, size);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace

SpMatC diag_sampling_D(const CoefficientFn& a, const GridSize& n) {
    return diagonal_from(a, n, /*interior_grid=*/false);
}

SpMatC diag_sampling_I(const CoefficientFn& a, const GridSize& n) {
    return diagonal_from(a, n, /*interior_grid=*/true);
}

struct GltExpr::Node {
    Kind kind;
    int dim = 0;
    std::optional<Stencil> stencil;        // Toeplitz
    std::optional<CoefficientFn> coeff;    // DiagD / DiagI
    Complex scalar{0.0, 0.0};              // Scalar
    std::optional<Domain> domain;          // Reduce
    std::vector<GltExpr> children;
};

GltExpr::Kind GltExpr::kind() const { return node_->kind; }
int GltExpr::dim() const { return node_->dim; }

namespace {

std::shared_ptr<const GltExpr::Node> make_node(GltExpr::Node node) {
    return std::make_shared<const GltExpr::Node>(std::move(node));
}

int common_dim(const std::vector<GltExpr>& children, const char* what) {
    if (children.empty()) throw std::invalid_argument(std::string(what) + ": needs children");
    const int d = children.front().dim();
    for (const auto& c : children)
        if (c.dim() != d)
            throw std::invalid_argument(std::string(what) + ": children dimension mismatch");
    return d;
}

}  // namespace

GltExpr GltExpr::toeplitz(Stencil stencil) {
    Node n;
    n.kind = Kind::Toeplitz;
    n.dim = stencil.dim();
    n.stencil = std::move(stencil);
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::diag_d(int dim, CoefficientFn a) {
    Node n;
    n.kind = Kind::DiagD;
    n.dim = dim;
    n.coeff = std::move(a);
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::diag_i(int dim, CoefficientFn a) {
    Node n;
    n.kind = Kind::DiagI;
    n.dim = dim;
    n.coeff = std::move(a);
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::zero(int dim) {
    Node n;
    n.kind = Kind::Zero;
    n.dim = dim;
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::sum(std::vector<GltExpr> terms) {
    Node n;
    n.kind = Kind::Sum;
    n.dim = common_dim(terms, "GltExpr::sum");
    n.children = std::move(terms);
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::product(std::vector<GltExpr> factors) {
    Node n;
    n.kind = Kind::Product;
    n.dim = common_dim(factors, "GltExpr::product");
    n.children = std::move(factors);
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::scaled(Complex factor, GltExpr child) {
    Node n;
    n.kind = Kind::Scalar;
    n.dim = child.dim();
    n.scalar = factor;
    n.children.push_back(std::move(child));
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::adjoint(GltExpr child) {
    Node n;
    n.kind = Kind::ConjTranspose;
    n.dim = child.dim();
    n.children.push_back(std::move(child));
    return GltExpr(make_node(std::move(n)));
}

GltExpr GltExpr::reduced(Domain domain, GltExpr child) {
    if (domain.dim() != child.dim())
        throw std::invalid_argument("GltExpr::reduced: domain dimension mismatch");
    Node n;
    n.kind = Kind::Reduce;
    n.dim = child.dim();
    n.domain = std::move(domain);
    n.children.push_back(std::move(child));
    return GltExpr(make_node(std::move(n)));
}

SpMatC build_matrix(const GltExpr& expr, const GridSize& n) {
    if (expr.dim() != n.dim()) throw std::invalid_argument("build_matrix: dimension mismatch");
    const auto& node = expr.node();
    switch (node.kind) {
        case GltExpr::Kind::Toeplitz:
            return toeplitz(*node.stencil, n);
        case GltExpr::Kind::DiagD:
            return diag_sampling_D(*node.coeff, n);
        case GltExpr::Kind::DiagI:
            return diag_sampling_I(*node.coeff, n);
        case GltExpr::Kind::Zero:
            return SpMatC(n.count(), n.count());
        case GltExpr::Kind::Sum: {
            SpMatC acc = build_matrix(node.children.front(), n);
            for (std::size_t i = 1; i < node.children.size(); ++i)
                acc = acc + build_matrix(node.children[i], n);
            return acc;
        }
        case GltExpr::Kind::Product: {
            SpMatC acc = build_matrix(node.children.front(), n);
            for (std::size_t i = 1; i < node.children.size(); ++i)
                acc = SpMatC(acc * build_matrix(node.children[i], n));
            return acc;
        }
        case GltExpr::Kind::Scalar:
            return SpMatC(node.scalar * build_matrix(node.children.front(), n));
        case GltExpr::Kind::ConjTranspose:
            return SpMatC(build_matrix(node.children.front(), n).adjoint());
        case GltExpr::Kind::Reduce: {
            const Projector p(mask(*node.domain, n, /*closure=*/true));
            return zero_out(p, build_matrix(node.children.front(), n));
        }
    }
    throw std::logic_error("build_matrix: unknown node kind");
}

CMat build_matrix_dense(const GltExpr& expr, const GridSize& n) {
    return CMat(build_matrix(expr, n));
}

namespace {

// Separable term list, or empty optional once the cap is exceeded.
using TermList = std::optional<std::vector<SymbolTerm>>;

TermList derive_terms(const GltExpr& expr) {
    const auto& node = expr.node();
    const int d = expr.dim();
    switch (node.kind) {
        case GltExpr::Kind::Toeplitz:
            return std::vector<SymbolTerm>{{CoefficientFn::constant(Complex(1.0, 0.0)),
                                            *node.stencil}};
        case GltExpr::Kind::DiagD:
        case GltExpr::Kind::DiagI:
            return std::vector<SymbolTerm>{{*node.coeff, Stencil::identity(d)}};
        case GltExpr::Kind::Zero:
            return std::vector<SymbolTerm>{};
        case GltExpr::Kind::Sum: {
            std::vector<SymbolTerm> acc;
            for (const auto& child : node.children) {
                TermList t = derive_terms(child);
                if (!t) return std::nullopt;
                acc.insert(acc.end(), t->begin(), t->end());
                if (acc.size() > kSeparableTermCap) return std::nullopt;
            }
            return acc;
        }
        case GltExpr::Kind::Product: {
            TermList acc = derive_terms(node.children.front());
            if (!acc) return std::nullopt;
            for (std::size_t i = 1; i < node.children.size(); ++i) {
                TermList rhs = derive_terms(node.children[i]);
                if (!rhs) return std::nullopt;
                std::vector<SymbolTerm> next;
                if (acc->size() * rhs->size() > kSeparableTermCap) return std::nullopt;
                for (const auto& ta : *acc)
                    for (const auto& tb : *rhs)
                        next.push_back({CoefficientFn::product(ta.coeff, tb.coeff),
                                        ta.stencil.convolved(tb.stencil)});
                acc = std::move(next);
            }
            return acc;
        }
        case GltExpr::Kind::Scalar: {
            TermList t = derive_terms(node.children.front());
            if (!t) return std::nullopt;
            for (auto& term : *t) term.coeff = CoefficientFn::scaled(node.scalar, term.coeff);
            return t;
        }
        case GltExpr::Kind::ConjTranspose: {
            TermList t = derive_terms(node.children.front());
            if (!t) return std::nullopt;
            for (auto& term : *t) {
                term.coeff = CoefficientFn::conjugated(term.coeff);
                term.stencil = term.stencil.conjugated();
            }
            return t;
        }
        case GltExpr::Kind::Reduce: {
            TermList t = derive_terms(node.children.front());
            if (!t) return std::nullopt;
            const CoefficientFn chi = CoefficientFn::indicator(*node.domain);
            for (auto& term : *t) term.coeff = CoefficientFn::product(chi, term.coeff);
            return t;
        }
    }
    throw std::logic_error("derive_terms: unknown node kind");
}

Complex eval_symbol(const GltExpr& expr, std::span<const double> x, std::span<const double> theta) {
    const auto& node = expr.node();
    switch (node.kind) {
        case GltExpr::Kind::Toeplitz:
            return node.stencil->eval(theta);
        case GltExpr::Kind::DiagD:
        case GltExpr::Kind::DiagI:
            return (*node.coeff)(x);
        case GltExpr::Kind::Zero:
            return Complex(0.0, 0.0);
        case GltExpr::Kind::Sum: {
            Complex acc(0.0, 0.0);
            for (const auto& child : node.children) acc += eval_symbol(child, x, theta);
            return acc;
        }
        case GltExpr::Kind::Product: {
            Complex acc(1.0, 0.0);
            for (const auto& child : node.children) acc *= eval_symbol(child, x, theta);
            return acc;
        }
        case GltExpr::Kind::Scalar:
            return node.scalar * eval_symbol(node.children.front(), x, theta);
        case GltExpr::Kind::ConjTranspose:
            return std::conj(eval_symbol(node.children.front(), x, theta));
        case GltExpr::Kind::Reduce: {
            const double chi = node.domain->membership(x) != Region::Outside ? 1.0 : 0.0;
            return chi * eval_symbol(node.children.front(), x, theta);
        }
    }
    throw std::logic_error("eval_symbol: unknown node kind");
}

}  // namespace

SeparableSymbol derive_symbol(const GltExpr& expr) {
    const int d = expr.dim();
    if (TermList terms = derive_terms(expr))
        return SeparableSymbol(d, Domain::hypercube(d), std::move(*terms));
    return SeparableSymbol::generic(
        d, Domain::hypercube(d),
        [expr](std::span<const double> x, std::span<const double> theta) {
            return eval_symbol(expr, x, theta);
        });
}

}  // namespace rglt
