#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/SparseCore>

#include "rglt/domain.hpp"
#include "rglt/reduction.hpp"
#include "rglt/stencil.hpp"
#include "rglt/symbols.hpp"

namespace rglt {

/// Diffusion problem
///   -sum_{i,j} d/dx_j (a_ij du/dx_i) + sum_i b_i du/dx_i + c u = f
/// on a closed domain in [0,1]^2, discretized with P1 hat functions on the
/// structured triangulation of the square (cells split along the diagonal
/// whose node couplings sit at offsets (+1,-1) and (-1,+1)).
struct P1Problem {
    Domain domain;
    std::array<std::array<CoefficientFn, 2>, 2> diffusion;  // A = (a_ij)
    std::array<CoefficientFn, 2> convection;                // b
    CoefficientFn reaction;                                 // c

    static P1Problem laplace(Domain domain);  // A = I, b = 0, c = 0
};

/// Nodes p of the interior grid whose six-triangle support T_p is contained
/// in the (closed) domain; containment tested per triangle with vertex, edge
/// midpoint and centroid probes, quadrupled per extra refinement level.
/// Lexicographic node order.
std::vector<MultiIndex> masked_nodes(const Domain& domain, std::int64_t n, int refine_level = 0);

struct P1Assembly {
    SpMatC matrix;                  // entry (q,p) = integral of the bilinear form
    std::vector<MultiIndex> nodes;  // row/column order
    std::int64_t grid_n = 0;
};

/// Entries by per-triangle 3-point edge-midpoint Gauss quadrature (exact for
/// quadratic integrands, hence exact for constant coefficients).
P1Assembly assemble_p1(const P1Problem& problem, std::int64_t n);

/// The square-case symbol with the seven offsets (0,0), (0,+-1), (+-1,0),
/// (1,-1), (-1,1) built from the rows of B = [1 1; 1 0; 0 1].
SeparableSymbol fe_symbol_square(const std::array<std::array<CoefficientFn, 2>, 2>& diffusion);

/// The square symbol of the zero-extended coefficients, restricted to the
/// problem domain.
SeparableSymbol fe_symbol_subdomain(const P1Problem& problem);

/// A differentiable grid map phi : D -> Omega with its Jacobian.
struct DiffeoMap {
    std::function<std::array<double, 2>(std::span<const double>)> phi;
    std::function<Eigen::Matrix2d(std::span<const double>)> jacobian;
};

struct MappedCoefficients {
    std::array<std::array<CoefficientFn, 2>, 2> diffusion;
    std::array<CoefficientFn, 2> convection;
    CoefficientFn reaction;
};

/// Pullback of the coefficients through phi:
///   A~(x) = J^-1 A(phi(x)) J^-T |det J|,  b~ = J^-1 b(phi(x)) |det J|,
///   c~ = c(phi(x)) |det J|.
/// Each evaluation throws when the Jacobian is singular at the point.
MappedCoefficients map_coefficients(const std::array<std::array<CoefficientFn, 2>, 2>& diffusion,
                                    const std::array<CoefficientFn, 2>& convection,
                                    const CoefficientFn& reaction, const DiffeoMap& map);

}  // namespace rglt
