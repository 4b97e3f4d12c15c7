#include "rglt/fe_p1.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace rglt {

P1Problem P1Problem::laplace(Domain domain) {
    const CoefficientFn one = CoefficientFn::constant(Complex(1.0, 0.0));
    const CoefficientFn zero = CoefficientFn::constant(Complex(0.0, 0.0));
    return P1Problem{std::move(domain), {{{one, zero}, {zero, one}}}, {zero, zero}, zero};
}

namespace {

using Vec2 = std::array<double, 2>;

Vec2 midpoint(const Vec2& a, const Vec2& b) { return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])}; }

bool triangle_in_domain(const Domain& domain, const Vec2& a, const Vec2& b, const Vec2& c,
                        int refine_level) {
    const Vec2 probes[7] = {a,
                            b,
                            c,
                            midpoint(a, b),
                            midpoint(b, c),
                            midpoint(c, a),
                            {(a[0] + b[0] + c[0]) / 3.0, (a[1] + b[1] + c[1]) / 3.0}};
    for (const Vec2& p : probes)
        if (!domain.contains(p, /*closure=*/true)) return false;
    if (refine_level <= 0) return true;
    const Vec2 mab = midpoint(a, b), mbc = midpoint(b, c), mca = midpoint(c, a);
    return triangle_in_domain(domain, a, mab, mca, refine_level - 1) &&
           triangle_in_domain(domain, mab, b, mbc, refine_level - 1) &&
           triangle_in_domain(domain, mca, mbc, c, refine_level - 1) &&
           triangle_in_domain(domain, mab, mbc, mca, refine_level - 1);
}

// The six support triangles of node (i,j) in grid-index space; entries are
// offsets of the two non-center vertices.
constexpr std::array<std::array<std::array<int, 2>, 2>, 6> kSupportTriangles{{
    {{{+1, 0}, {0, +1}}},   // cell (i,j) lower
    {{{+1, 0}, {+1, -1}}},  // cell (i,j-1) upper
    {{{+1, -1}, {0, -1}}},  // cell (i,j-1) lower
    {{{0, -1}, {-1, 0}}},   // cell (i-1,j-1) upper
    {{{-1, 0}, {-1, +1}}},  // cell (i-1,j) lower
    {{{-1, +1}, {0, +1}}},  // cell (i-1,j) upper
}};

}  // namespace

std::vector<MultiIndex> masked_nodes(const Domain& domain, std::int64_t n, int refine_level) {
    if (domain.dim() != 2) throw std::invalid_argument("masked_nodes: the method is 2D only");
    if (n < 1) throw std::invalid_argument("masked_nodes: n must be >= 1");
    const double h = 1.0 / static_cast<double>(n + 1);
    std::vector<MultiIndex> nodes;
    for (std::int64_t i = 1; i <= n; ++i)
        for (std::int64_t j = 1; j <= n; ++j) {
            const Vec2 p{static_cast<double>(i) * h, static_cast<double>(j) * h};
            bool inside = true;
            for (const auto& tri : kSupportTriangles) {
                const Vec2 b{p[0] + tri[0][0] * h, p[1] + tri[0][1] * h};
                const Vec2 c{p[0] + tri[1][0] * h, p[1] + tri[1][1] * h};
                if (!triangle_in_domain(domain, p, b, c, refine_level)) {
                    inside = false;
                    break;
                }
            }
            if (inside) nodes.push_back(MultiIndex{i, j});
        }
    return nodes;
}

P1Assembly assemble_p1(const P1Problem& problem, std::int64_t n) {
    std::vector<MultiIndex> nodes = masked_nodes(problem.domain, n);
    if (nodes.empty()) throw std::runtime_error("assemble_p1: empty node set");
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> row_of;
    for (std::size_t r = 0; r < nodes.size(); ++r)
        row_of[{nodes[r][0], nodes[r][1]}] = static_cast<std::int64_t>(r);

    const double h = 1.0 / static_cast<double>(n + 1);
    const double weight = h * h / 6.0;  // |triangle| / 3 per quadrature node
    std::vector<Eigen::Triplet<Complex>> trips;

    // cells (cx, cy) with SW corner at (cx h, cy h); each splits along the
    // (+1,-1)/(-1,+1) diagonal into a lower and an upper triangle
    for (std::int64_t cx = 0; cx <= n; ++cx) {
        for (std::int64_t cy = 0; cy <= n; ++cy) {
            const std::array<std::array<std::array<std::int64_t, 2>, 3>, 2> triangles{{
                {{{cx, cy}, {cx + 1, cy}, {cx, cy + 1}}},
                {{{cx + 1, cy}, {cx + 1, cy + 1}, {cx, cy + 1}}},
            }};
            for (const auto& tri : triangles) {
                std::array<Vec2, 3> vert;
                std::array<std::int64_t, 3> row;
                bool any = false;
                for (int v = 0; v < 3; ++v) {
                    vert[v] = {static_cast<double>(tri[v][0]) * h,
                               static_cast<double>(tri[v][1]) * h};
                    const auto it = row_of.find({tri[v][0], tri[v][1]});
                    row[v] = it == row_of.end() ? -1 : it->second;
                    any = any || row[v] >= 0;
                }
                if (!any) continue;

                // constant nodal gradients from the signed area
                const double area2 = (vert[1][0] - vert[0][0]) * (vert[2][1] - vert[0][1]) -
                                     (vert[2][0] - vert[0][0]) * (vert[1][1] - vert[0][1]);
                std::array<Eigen::Vector2d, 3> grad;
                for (int v = 0; v < 3; ++v) {
                    const Vec2& pa = vert[(v + 1) % 3];
                    const Vec2& pb = vert[(v + 2) % 3];
                    grad[v] = Eigen::Vector2d(pa[1] - pb[1], pb[0] - pa[0]) / area2;
                }

                const std::array<Vec2, 3> quad{midpoint(vert[0], vert[1]),
                                               midpoint(vert[1], vert[2]),
                                               midpoint(vert[2], vert[0])};
                // hat values at the edge midpoints
                const double psi[3][3] = {{0.5, 0.0, 0.5}, {0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}};

                for (int qp = 0; qp < 3; ++qp) {
                    const std::span<const double> x(quad[qp].data(), 2);
                    Eigen::Matrix2cd a;
                    for (int r = 0; r < 2; ++r)
                        for (int c = 0; c < 2; ++c)
                            a(r, c) = problem.diffusion[static_cast<std::size_t>(r)]
                                                       [static_cast<std::size_t>(c)](x);
                    const Eigen::Vector2cd b(problem.convection[0](x), problem.convection[1](x));
                    const Complex c_val = problem.reaction(x);
                    for (int vq = 0; vq < 3; ++vq) {
                        if (row[vq] < 0) continue;
                        for (int vp = 0; vp < 3; ++vp) {
                            if (row[vp] < 0) continue;
                            // (grad psi_p)^T A grad psi_q + (grad psi_p)^T b psi_q
                            //   + c psi_p psi_q
                            const Eigen::Vector2cd gp = grad[vp].cast<Complex>();
                            const Eigen::Vector2cd gq = grad[vq].cast<Complex>();
                            Complex value = (gp.transpose() * (a * gq))(0, 0);
                            value += (gp.transpose() * b)(0, 0) * psi[vq][qp];
                            value += c_val * psi[vp][qp] * psi[vq][qp];
                            trips.emplace_back(static_cast<int>(row[vq]),
                                               static_cast<int>(row[vp]), weight * value);
                        }
                    }
                }
            }
        }
    }

    SpMatC matrix(static_cast<Eigen::Index>(nodes.size()), static_cast<Eigen::Index>(nodes.size()));
    matrix.setFromTriplets(trips.begin(), trips.end());
    return {std::move(matrix), std::move(nodes), n};
}

namespace {

CoefficientFn combine(const std::array<std::array<CoefficientFn, 2>, 2>& a,
                      double w11, double w12, double w21, double w22, const char* name) {
    return {[=](std::span<const double> p) {
                return w11 * a[0][0](p) + w12 * a[0][1](p) + w21 * a[1][0](p) + w22 * a[1][1](p);
            },
            name};
}

}  // namespace

SeparableSymbol fe_symbol_square(const std::array<std::array<CoefficientFn, 2>, 2>& diffusion) {
    // r coefficients from the rows of B = [1 1; 1 0; 0 1]:
    //   r00 = B1 A B1^T + B2 A B2^T + B3 A B3^T
    //   r10 = -(B1 A B2^T + B2 A B1^T)/2, r01 = -(B3 A B1^T + B1 A B3^T)/2
    //   r1m1 = (B2 A B3^T + B3 A B2^T)/2
    std::vector<SymbolTerm> terms;
    terms.push_back({combine(diffusion, 2, 1, 1, 2, "r00"), Stencil::identity(2)});

    Stencil axis1(2);
    axis1.set({1, 0}, Complex(1.0, 0.0)).set({-1, 0}, Complex(1.0, 0.0));
    terms.push_back({combine(diffusion, -1, -0.5, -0.5, 0, "r10"), axis1});

    Stencil axis2(2);
    axis2.set({0, 1}, Complex(1.0, 0.0)).set({0, -1}, Complex(1.0, 0.0));
    terms.push_back({combine(diffusion, 0, -0.5, -0.5, -1, "r01"), axis2});

    Stencil diag(2);
    diag.set({1, -1}, Complex(1.0, 0.0)).set({-1, 1}, Complex(1.0, 0.0));
    terms.push_back({combine(diffusion, 0, 0.5, 0.5, 0, "r1m1"), diag});

    return SeparableSymbol(2, Domain::hypercube(2), std::move(terms));
}

SeparableSymbol fe_symbol_subdomain(const P1Problem& problem) {
    std::array<std::array<CoefficientFn, 2>, 2> extended;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            const CoefficientFn& entry =
                problem.diffusion[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            extended[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                CoefficientFn::product(CoefficientFn::indicator(problem.domain), entry);
        }
    return fe_symbol_square(extended).restricted_to(problem.domain);
}

namespace {

Eigen::Matrix2d jacobian_at(const DiffeoMap& map, std::span<const double> x) {
    const Eigen::Matrix2d j = map.jacobian(x);
    if (std::abs(j.determinant()) < 1e-14) {
        std::ostringstream os;
        os << "map_coefficients: singular jacobian at (" << x[0] << ", " << x[1] << ")";
        throw std::runtime_error(os.str());
    }
    return j;
}

}  // namespace

MappedCoefficients map_coefficients(const std::array<std::array<CoefficientFn, 2>, 2>& diffusion,
                                    const std::array<CoefficientFn, 2>& convection,
                                    const CoefficientFn& reaction, const DiffeoMap& map) {
    MappedCoefficients out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out.diffusion[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = {
                [map, diffusion, r, c](std::span<const double> x) {
                    const Eigen::Matrix2d j = jacobian_at(map, x);
                    const Eigen::Matrix2cd jinv = j.inverse().cast<Complex>();
                    const auto y = map.phi(x);
                    Eigen::Matrix2cd a;
                    for (int rr = 0; rr < 2; ++rr)
                        for (int cc = 0; cc < 2; ++cc)
                            a(rr, cc) = diffusion[static_cast<std::size_t>(rr)]
                                                 [static_cast<std::size_t>(cc)](y);
                    const Eigen::Matrix2cd mapped =
                        jinv * a * jinv.transpose() * std::abs(j.determinant());
                    return mapped(r, c);
                },
                "mapped_diffusion"};
    for (int r = 0; r < 2; ++r)
        out.convection[static_cast<std::size_t>(r)] = {
            [map, convection, r](std::span<const double> x) {
                const Eigen::Matrix2d j = jacobian_at(map, x);
                const auto y = map.phi(x);
                const Eigen::Vector2cd b(convection[0](y), convection[1](y));
                const Eigen::Vector2cd mapped =
                    j.inverse().cast<Complex>() * b * std::abs(j.determinant());
                return mapped(r);
            },
            "mapped_convection"};
    out.reaction = {[map, reaction](std::span<const double> x) {
                        const Eigen::Matrix2d j = jacobian_at(map, x);
                        const auto y = map.phi(x);
                        return reaction(y) * std::abs(j.determinant());
                    },
                    "mapped_reaction"};
    return out;
}

}  // namespace rglt
