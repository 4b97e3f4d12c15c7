#pragma once

#include <memory>
#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "rglt/domain.hpp"
#include "rglt/reduction.hpp"
#include "rglt/stencil.hpp"
#include "rglt/symbols.hpp"

namespace rglt {

/// Multilevel Toeplitz generator T_n(f) = [f_{i-j}] as a sparse matrix.
SpMatC toeplitz(const Stencil& stencil, const GridSize& n);

/// D_n(a) = diag(a(i/n)) in lexicographic order.
SpMatC diag_sampling_D(const CoefficientFn& a, const GridSize& n);

/// I_n(a) = diag(a(i/(n+1))), same size as D_n(a).
SpMatC diag_sampling_I(const CoefficientFn& a, const GridSize& n);

/// Immutable expression tree over Toeplitz and diagonal-sampling leaves,
/// closed under sums, products, scalar multiples, conjugate transposition and
/// domain reduction, with a derivable symbol.
class GltExpr {
public:
    enum class Kind { Toeplitz, DiagD, DiagI, Zero, Sum, Product, Scalar, ConjTranspose, Reduce };

    static GltExpr toeplitz(Stencil stencil);
    static GltExpr diag_d(int dim, CoefficientFn a);
    static GltExpr diag_i(int dim, CoefficientFn a);
    static GltExpr zero(int dim);
    static GltExpr sum(std::vector<GltExpr> terms);
    static GltExpr product(std::vector<GltExpr> factors);
    static GltExpr scaled(Complex factor, GltExpr child);
    static GltExpr adjoint(GltExpr child);
    /// Z_Omega(child): rows/columns at grid points outside the domain zeroed
    /// at full size; restriction to d x d happens through reduction.
    static GltExpr reduced(Domain domain, GltExpr child);

    Kind kind() const;
    int dim() const;

    struct Node;
    const Node& node() const { return *node_; }

private:
    explicit GltExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Materializes the expression at grid size n.
SpMatC build_matrix(const GltExpr& expr, const GridSize& n);
CMat build_matrix_dense(const GltExpr& expr, const GridSize& n);

/// Symbol of the expression under the generator/diagonal/algebra rules:
/// Toeplitz -> f(theta), diagonal sampling -> a(x), sums and products act
/// pointwise, adjoint conjugates, reduction multiplies by chi_Omega(x).
/// Products expand distributively up to 4096 separable terms, beyond which
/// the symbol degrades to a generic pointwise evaluator.
SeparableSymbol derive_symbol(const GltExpr& expr);

}  // namespace rglt
