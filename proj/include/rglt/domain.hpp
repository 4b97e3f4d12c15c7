#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rglt/multiindex.hpp"

namespace rglt {

enum class Region { Inside, Boundary, Outside };

/// A Peano-Jordan measurable subset of [0,1]^d, immutable after construction.
///
/// Builtin shapes carry an exact signed distance (negative inside) and, when
/// known, their analytic measure. Implicit domains are defined by a strict
/// predicate on the open set: their boundary points classify as Outside and
/// no distance is available unless the sampled probe estimator is enabled.
class Domain {
public:
    int dim() const;
    const std::string& kind() const;

    Region membership(std::span<const double> p) const;
    /// Inside, or Boundary when closure is requested.
    bool contains(std::span<const double> p, bool closure) const;

    bool has_signed_distance() const;
    /// Signed distance to the boundary, negative inside. Throws when absent.
    double signed_distance(std::span<const double> p) const;

    std::optional<double> analytic_measure() const;

    /// Approximate |distance to boundary| <= c via an axis + corner probe
    /// stencil at radius c; used by boundary_band_count for implicit domains.
    bool near_boundary_probe(std::span<const double> p, double c) const;
    bool has_probe_estimator() const;
    /// Copy with the probe estimator enabled (implicit domains only).
    Domain with_probe_estimator() const;

    // Builtin shapes. Callers keep them inside [0,1]^d.
    static Domain hypercube(int dim);
    static Domain disk(std::array<double, 2> center, double radius);
    static Domain ball(std::vector<double> center, double radius);
    static Domain annulus(std::array<double, 2> center, double inner_radius, double outer_radius);
    static Domain triangle(std::array<double, 2> a, std::array<double, 2> b,
                           std::array<double, 2> c);
    /// [0,1]^2 minus the open upper-right quadrant (1/2,1] x (1/2,1].
    static Domain l_shape();
    static Domain polygon(std::vector<std::array<double, 2>> vertices);
    static Domain implicit(int dim, std::function<bool(std::span<const double>)> predicate);
    /// Affine image M x + shift of another domain. Signed distance is carried
    /// over only when M is a similarity transform.
    static Domain mapped(const Eigen::MatrixXd& m, const Eigen::VectorXd& shift,
                         const Domain& inner);

    struct Impl;  // definition private to domain.cpp

private:
    explicit Domain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// chi_Omega sampled on the interior grid Xi_n = { i/(n+1) : 1 <= i <= n }.
struct GridMask {
    GridSize n;
    std::vector<std::uint8_t> bits;  // lex order; bits[k-1] is the flat index k
    std::int64_t count = 0;          // d_n^Omega = popcount(bits)

    bool operator[](std::int64_t flat_one_based) const {
        return bits[static_cast<std::size_t>(flat_one_based - 1)] != 0;
    }
};

/// The grid point i/(n+1) for a 1-based multi-index i.
std::vector<double> grid_point(const MultiIndex& i, const GridSize& n);

/// Visits (i, i/(n+1)) for i = 1..n in lexicographic order. The per-axis
/// endpoints 0 and 1 are never visited.
void for_each_grid_point(
    const GridSize& n,
    const std::function<void(const MultiIndex&, std::span<const double>)>& visit);

GridMask mask(const Domain& domain, const GridSize& n, bool closure);

/// Number of grid points within distance c of the boundary (d_n^{K_c}).
/// Exact through the signed distance for builtin shapes; implicit domains
/// need the probe estimator and throw otherwise.
std::int64_t boundary_band_count(const Domain& domain, const GridSize& n, double c);

/// D(n,k): points of Xi_n inside the open set whose open axis segment of
/// radius k h_i exits the interior along some axis. Detected by sampling the
/// segment at 64 midpoints per axis.
std::vector<MultiIndex> near_boundary_points(const Domain& domain, const GridSize& n, int k);

/// d_n^Omega / N(n); converges to the measure of the domain.
double measure_estimate(const Domain& domain, const GridSize& n);

}  // namespace rglt
