#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "rglt/fd_sw.hpp"
#include "rglt/glt_core.hpp"

using namespace rglt;

namespace {

Domain box_1d(double upper) {
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = upper;
    return Domain::mapped(m, Eigen::VectorXd::Zero(1), Domain::hypercube(1));
}

CMat dense_sw(const SWAssembly& assembly) {
    return Eigen::MatrixXd(assembly.matrix).cast<Complex>();
}

}  // namespace

TEST_SUITE("fd_sw") {

TEST_CASE("neighbor fractions") {
    const Domain unit = Domain::hypercube(1);
    CHECK(neighbor_fraction(unit, std::vector<double>{0.5}, 0, +1, 0.25) == 1.0);

    const Domain box = box_1d(0.6);
    CHECK(neighbor_fraction(box, std::vector<double>{0.5}, 0, +1, 0.25) ==
          doctest::Approx(0.4).epsilon(1e-9));
    // sup = 1 when the crossing sits exactly on the unit step
    CHECK(neighbor_fraction(box, std::vector<double>{0.25}, 0, -1, 0.25) == 1.0);

    const Domain disk = Domain::disk({0.5, 0.5}, 0.5);
    CHECK(neighbor_fraction(disk, std::vector<double>{0.5, 0.9}, 1, +1, 1.0 / 16.0) == 1.0);

    // segments can exit and re-enter on non-convex domains: the fraction
    // stops at the first crossing (the inner circle of an annulus)
    const Domain ring = Domain::annulus({0.5, 0.5}, 0.2, 0.45);
    CHECK(neighbor_fraction(ring, std::vector<double>{0.25, 0.5}, 0, +1, 0.25) ==
          doctest::Approx(0.2).epsilon(1e-9));

    CHECK_THROWS_AS(neighbor_fraction(unit, std::vector<double>{1.5}, 0, +1, 0.25),
                    std::invalid_argument);
}

TEST_CASE("1D interior assembly is the classical tridiagonal") {
    SWProblem problem = SWProblem::poisson(Domain::hypercube(1));
    const SWAssembly assembly = assemble_sw(problem, GridSize{3});
    REQUIRE(assembly.matrix.rows() == 3);
    const CMat a = dense_sw(assembly);
    for (int i = 0; i < 3; ++i) CHECK(a(i, i).real() == doctest::Approx(32.0));
    CHECK(a(0, 1).real() == doctest::Approx(-16.0));
    CHECK(a(1, 0).real() == doctest::Approx(-16.0));
    CHECK(a(0, 2).real() == doctest::Approx(0.0));
    for (int i = 0; i < 3; ++i) CHECK(assembly.rhs(i) == doctest::Approx(1.0));

    problem.reaction = CoefficientFn::constant(5.0);
    const CMat with_reaction = dense_sw(assemble_sw(problem, GridSize{3}));
    for (int i = 0; i < 3; ++i) CHECK(with_reaction(i, i).real() == doctest::Approx(37.0));
}

TEST_CASE("boundary fractions reshape the last row") {
    const SWProblem problem = SWProblem::poisson(box_1d(0.6));
    const SWAssembly assembly = assemble_sw(problem, GridSize{3});
    REQUIRE(assembly.matrix.rows() == 2);  // interior points 0.25 and 0.5
    const CMat a = dense_sw(assembly);
    // at x = 0.5: s+ = 0.4, s- = 1 -> diagonal (1/0.28 + 1/0.7)/h^2 = 80
    CHECK(a(1, 1).real() == doctest::Approx(80.0).epsilon(1e-6));
    // no right neighbor (s+ < 1), left neighbor from the table
    CHECK(a(1, 0).real() == doctest::Approx(-1.0 / (0.5 * 1.4 * 0.0625)).epsilon(1e-6));
    // at x = 0.25 both steps are full; the left neighbor x = 0 is boundary
    CHECK(a(0, 0).real() == doctest::Approx(32.0).epsilon(1e-6));
}

TEST_CASE("full-square assembly equals the classical generator expression") {
    // A = sum_i [ T(second difference axis i) / h^2 ] (+ b and c terms) on
    // the unit square with constant coefficients
    const double b1 = 0.7, b2 = -0.4, c = 2.5;
    SWProblem problem = SWProblem::poisson(Domain::hypercube(2));
    problem.convection = {CoefficientFn::constant(b1), CoefficientFn::constant(b2)};
    problem.reaction = CoefficientFn::constant(c);

    const GridSize n{5, 5};
    const double h = n.step(0);
    const SWAssembly assembly = assemble_sw(problem, n);
    REQUIRE(assembly.matrix.rows() == n.count());

    std::vector<GltExpr> terms;
    for (int axis = 0; axis < 2; ++axis) {
        Stencil second(2), first(2);
        std::vector<std::int64_t> off{0, 0};
        second.set(off, 2.0);
        off[axis] = 1;
        second.set(off, -1.0);
        first.set(off, -1.0);
        off[axis] = -1;
        second.set(off, -1.0);
        first.set(off, 1.0);
        terms.push_back(GltExpr::scaled(1.0 / (h * h), GltExpr::toeplitz(second)));
        // b du/dx with the central difference (u_{j+1} - u_{j-1}) / 2h:
        // T(first) realizes entries -1 at +e and +1 at -e via f_{i-j}
        terms.push_back(GltExpr::scaled((axis == 0 ? b1 : b2) / (2.0 * h),
                                        GltExpr::toeplitz(first)));
    }
    terms.push_back(GltExpr::scaled(c, GltExpr::toeplitz(Stencil::identity(2))));
    const CMat classical = build_matrix_dense(GltExpr::sum(terms), n);
    CHECK((dense_sw(assembly) - classical).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("interior rows on the disk agree with the restricted square assembly") {
    const Domain disk = Domain::disk({0.5, 0.5}, 0.4);
    const GridSize n{15, 15};
    const SWProblem problem = SWProblem::poisson(disk);
    const SWAssembly assembly = assemble_sw(problem, n);

    const double h = n.step(0);
    const CMat classical = build_matrix_dense(
        GltExpr::scaled(1.0 / (h * h), GltExpr::toeplitz(Stencil::laplacian(2))), n);
    const CMat restricted_classical = restricted(assembly.projector, classical);

    // rows away from the boundary coincide exactly
    std::vector<std::uint8_t> near(static_cast<std::size_t>(n.count()), 0);
    for (const MultiIndex& i : near_boundary_points(disk, n, 2))
        near[static_cast<std::size_t>(linearize(i, n) - 1)] = 1;
    const auto kept = assembly.projector.kept();
    const CMat a = dense_sw(assembly);
    std::int64_t interior_rows = 0;
    for (std::int64_t r = 0; r < assembly.projector.reduced_size(); ++r) {
        if (near[static_cast<std::size_t>(kept[static_cast<std::size_t>(r)])]) continue;
        ++interior_rows;
        CHECK((a.row(r) - restricted_classical.row(r)).cwiseAbs().maxCoeff() <=
              1e-12 * (1.0 / (h * h)));
    }
    CHECK(interior_rows > 0);
}

TEST_CASE("symmetry away from the boundary and positive diagonals") {
    const Domain disk = Domain::disk({0.5, 0.5}, 0.4);
    const GridSize n{12, 12};
    SWProblem problem = SWProblem::poisson(disk);
    problem.reaction = CoefficientFn::expression("x1 + x2");
    const SWAssembly assembly = assemble_sw(problem, n);
    const CMat a = dense_sw(assembly);
    for (std::int64_t i = 0; i < a.rows(); ++i) CHECK(a(i, i).real() > 0.0);

    std::vector<std::uint8_t> near(static_cast<std::size_t>(n.count()), 0);
    for (const MultiIndex& i : near_boundary_points(disk, n, 2))
        near[static_cast<std::size_t>(linearize(i, n) - 1)] = 1;
    const auto kept = assembly.projector.kept();
    for (std::int64_t r = 0; r < a.rows(); ++r)
        for (std::int64_t c = 0; c < a.cols(); ++c) {
            if (near[static_cast<std::size_t>(kept[static_cast<std::size_t>(r)])] ||
                near[static_cast<std::size_t>(kept[static_cast<std::size_t>(c)])])
                continue;
            CHECK(std::abs(a(r, c) - a(c, r)) == 0.0);
        }
}

TEST_CASE("symbol specializations") {
    std::vector<double> x{0.3, 0.8}, theta{1.0, -0.7};
    const MultiIndex nu1 = MultiIndex::uniform(1, 1);
    const MultiIndex nu2 = MultiIndex::uniform(2, 1);

    const auto sym1 = sw_symbol(SWProblem::poisson(Domain::hypercube(1)), nu1);
    CHECK(sym1.eval(std::vector<double>{0.5}, std::vector<double>{1.0}).real() ==
          doctest::Approx(2.0 - 2.0 * std::cos(1.0)));

    const auto sym2 = sw_symbol(SWProblem::poisson(Domain::hypercube(2)), nu2);
    CHECK(sym2.eval(x, theta).real() ==
          doctest::Approx(4.0 - 2.0 * std::cos(theta[0]) - 2.0 * std::cos(theta[1])));

    SWProblem anisotropic = SWProblem::poisson(Domain::hypercube(2));
    anisotropic.diffusion = {CoefficientFn::expression("x1"), CoefficientFn::constant(0.0)};
    const auto sym3 = sw_symbol(anisotropic, nu2);
    CHECK(sym3.eval(x, theta).real() ==
          doctest::Approx(0.3 * (2.0 - 2.0 * std::cos(theta[0]))));
}

TEST_CASE("skew reports") {
    SWProblem square = SWProblem::poisson(Domain::hypercube(2));
    const auto symmetric = sw_skew_norm_report(square, {GridSize{7, 7}});
    CHECK(symmetric[0].ratio == 0.0);

    square.convection = {CoefficientFn::constant(1.0), CoefficientFn::constant(1.0)};
    const auto convected = sw_skew_norm_report(square, {GridSize{7, 7}, GridSize{15, 15}});
    CHECK(convected[1].ratio < convected[0].ratio);
    CHECK(convected[1].ratio < 0.05);

    const auto disk_report = sw_skew_norm_report(
        SWProblem::poisson(Domain::disk({0.5, 0.5}, 0.4)), {GridSize{15, 15}, GridSize{31, 31}});
    CHECK(disk_report[1].ratio < disk_report[0].ratio);
}

TEST_CASE("pathologically close points are dropped and logged") {
    const SWProblem problem = SWProblem::poisson(box_1d(0.5 + 2.5e-11));
    const SWAssembly assembly = assemble_sw(problem, GridSize{3});
    CHECK(assembly.matrix.rows() == 1);  // only x = 0.25 survives
    REQUIRE(assembly.dropped_flat.size() == 1);
    CHECK(assembly.dropped_flat[0] == 2);
}

TEST_CASE("empty interior grids are an error") {
    const Domain tiny = Domain::disk({0.3, 0.3}, 0.04);  // misses every point of Xi_3
    CHECK_THROWS_AS(assemble_sw(SWProblem::poisson(tiny), GridSize{3, 3}), std::runtime_error);
}

}  // TEST_SUITE
