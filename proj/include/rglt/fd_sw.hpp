#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "rglt/domain.hpp"
#include "rglt/reduction.hpp"
#include "rglt/stencil.hpp"
#include "rglt/symbols.hpp"

namespace rglt {

/// Convection-diffusion-reaction problem
///   -sum_i d/dx_i (a_i du/dx_i) + sum_i b_i du/dx_i + c u = f
/// on a closed domain in [0,1]^d with homogeneous Dirichlet data. All
/// evaluators must be defined on the whole cube (extension by zero outside
/// the domain is the caller's choice); a_i are treated as real-valued.
struct SWProblem {
    Domain domain;
    std::vector<CoefficientFn> diffusion;   // a_i, one per axis
    std::vector<CoefficientFn> convection;  // b_i, one per axis
    CoefficientFn reaction;                 // c
    CoefficientFn rhs;                      // f

    static SWProblem poisson(Domain domain);  // a = 1, b = 0, c = 0, f = 1
};

/// s_i^+/-(x): the largest fraction t in (0,1] such that the segment from x
/// toward x +- t h e_i stays in the open set. Detected by 64-point sampling
/// with bisection refinement; exactly 1 only when the whole closed unit step
/// stays inside. Throws when x is not interior.
double neighbor_fraction(const Domain& domain, std::span<const double> x, int axis, int sign,
                         double h);

struct SWAssembly {
    Eigen::SparseMatrix<double> matrix;  // d x d over the kept interior points
    Projector projector;                 // kept = Xi'_n minus dropped points
    Eigen::VectorXd rhs;
    std::vector<std::int64_t> dropped_flat;  // 1-based flat indices, logged
};

/// Assembles the Shortley-Weller system over the interior grid points, rows
/// and columns in lexicographic order. Off-diagonal entries exist only toward
/// full-step neighbors that are themselves kept; boundary neighbors are
/// eliminated through the zero Dirichlet data. Points with a fraction below
/// 1e-8 are dropped and logged. The matrix is returned unscaled.
SWAssembly assemble_sw(const SWProblem& problem, const GridSize& n);

/// kappa(x, theta) = sum_i nu_i^2 a_i(x) (2 - 2 cos theta_i) over the open
/// domain; convection and reaction are zero-distributed after scaling and
/// contribute nothing.
SeparableSymbol sw_symbol(const SWProblem& problem, const MultiIndex& nu);

struct SkewLevel {
    GridSize n;
    std::int64_t size = 0;
    double ratio = 0.0;  // ||Im-part(n^-2 A)||_F^2 / d_n
};

/// Frobenius mass of the skew part of the scaled matrix per sweep level;
/// must trend to zero for the spectral claim.
std::vector<SkewLevel> sw_skew_norm_report(const SWProblem& problem,
                                           const std::vector<GridSize>& sweep);

}  // namespace rglt
