#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <random>

#include "rglt/glt_core.hpp"
#include "rglt/symbols.hpp"

using namespace rglt;

namespace {

SeparableSymbol laplacian_symbol_1d() {
    return derive_symbol(GltExpr::toeplitz(Stencil::laplacian(1)));
}

}  // namespace

TEST_SUITE("symbols") {

TEST_CASE("symbol sampling grids") {
    // theta in {-pi, -pi/2, 0, pi/2} for ntheta = 4
    const auto values = sample_symbol(laplacian_symbol_1d(), 1, 4, SampleMode::Real);
    REQUIRE(values.size() == 4);
    CHECK(values[0] == doctest::Approx(0.0));
    CHECK(values[1] == doctest::Approx(2.0));
    CHECK(values[2] == doctest::Approx(2.0));
    CHECK(values[3] == doctest::Approx(4.0));

    const auto constant = sample_symbol(
        SeparableSymbol(1, Domain::hypercube(1),
                        {{CoefficientFn::constant(Complex(0.7, 0.0)), Stencil::identity(1)}}),
        3, 3, SampleMode::Real);
    for (double v : constant) CHECK(v == doctest::Approx(0.7));

    // x grid i/(nx+1) for the theta-independent symbol a(x) = x
    const auto linear = sample_symbol(
        SeparableSymbol(1, Domain::hypercube(1),
                        {{CoefficientFn::expression("x1"), Stencil::identity(1)}}),
        4, 1, SampleMode::Real);
    CHECK(linear == std::vector<double>{0.2, 0.4, 0.6, 0.8});

    // no admissible x point
    const auto off_grid = SeparableSymbol(
        2, Domain::disk({0.125, 0.125}, 0.05),
        {{CoefficientFn::constant(Complex(1.0, 0.0)), Stencil::identity(2)}});
    CHECK_THROWS_AS(sample_symbol(off_grid, 1, 4, SampleMode::Real), std::runtime_error);
}

TEST_CASE("distribution comparison") {
    const auto zero = compare_distributions({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
    CHECK(zero.wasserstein1 == 0.0);
    CHECK(zero.cdf_sup == 0.0);
    for (const auto& gap : zero.test_functional_gaps) CHECK(gap.gap == 0.0);

    const auto shifted = compare_distributions({0.0, 1.0}, {0.5, 1.5});
    CHECK(shifted.wasserstein1 == doctest::Approx(0.5));

    // eigenvalues of T_100 versus dense symbol sampling
    const CMat t = build_matrix_dense(GltExpr::toeplitz(Stencil::laplacian(1)), GridSize{100});
    const auto eig = eigvals_hermitian(t);
    const auto sym = sample_symbol(laplacian_symbol_1d(), 1, 10000, SampleMode::Real);
    CHECK(compare_distributions(eig.values, sym).wasserstein1 <= 0.05);

    CHECK_THROWS_AS(compare_distributions({}, {1.0}), std::invalid_argument);
}

TEST_CASE("acs_p on matrices with prescribed singular values") {
    CHECK(acs_p(CMat::Zero(4, 4)) == 0.0);

    CMat big = CMat::Zero(3, 3);
    big.diagonal() << 10, 10, 10;
    CHECK(acs_p(big) == doctest::Approx(1.0));

    CMat mixed = CMat::Zero(3, 3);
    mixed.diagonal() << 0.5, 0.1, 0.0;
    CHECK(acs_p(mixed) == doctest::Approx(1.0 / 3.0 + 0.1));

    // invariant: p <= min(1, sigma_max), permutation invariant
    std::mt19937 rng(83);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        CMat a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a(r, c) = Complex(g(rng), g(rng));
        const double p = acs_p(a);
        CHECK(p <= std::min(1.0, spectral_norm(a)) + 1e-12);
        Eigen::PermutationMatrix<Eigen::Dynamic> perm(n);
        perm.setIdentity();
        std::shuffle(perm.indices().data(), perm.indices().data() + n, rng);
        CHECK(acs_p(CMat(perm * a)) == doctest::Approx(p).epsilon(1e-10));
    }
}

TEST_CASE("pmea on sample sets") {
    CHECK(pmea(std::vector<double>{0.0, 0.0, 0.0}) == 0.0);
    CHECK(pmea(std::vector<double>(100, 0.3)) == doctest::Approx(0.3));

    std::vector<double> uniform;
    const int m = 4096;
    for (int i = 1; i <= m; ++i) uniform.push_back(static_cast<double>(i) / (m + 1));
    CHECK(pmea(std::span<const double>(uniform)) == doctest::Approx(1.0).epsilon(0.01));

    // pmea(f) = pmea(|f|), pmea(alpha f) <= |alpha| pmea(f) for |alpha| >= 1
    std::mt19937 rng(89);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Complex> f;
    for (int i = 0; i < 500; ++i) f.emplace_back(g(rng), g(rng));
    std::vector<double> mags;
    for (const auto& v : f) mags.push_back(std::abs(v));
    CHECK(pmea(std::span<const Complex>(f)) ==
          doctest::Approx(pmea(std::span<const double>(mags))));
    for (double alpha : {1.0, 1.5, 3.0}) {
        std::vector<Complex> scaled;
        for (const auto& v : f) scaled.push_back(alpha * v);
        CHECK(pmea(std::span<const Complex>(scaled)) <=
              alpha * pmea(std::span<const Complex>(f)) + 1e-12);
    }
}

TEST_CASE("dacs estimates") {
    const GltExpr dx = GltExpr::diag_d(1, CoefficientFn::expression("x1"));
    auto build_dx = [&](const GridSize& n) { return build_matrix_dense(dx, n); };
    auto build_zero = [](const GridSize& n) { return CMat(CMat::Zero(n.count(), n.count())); };

    const auto same = dacs_estimate(build_dx, build_dx, {GridSize{8}, GridSize{16}});
    for (const auto& v : same.per_n) CHECK(v.value == 0.0);

    // D_n(x) against zero: the minimum lands at i = n+1 and equals exactly 1
    const auto against_zero = dacs_estimate(build_dx, build_zero, {GridSize{64}, GridSize{128}});
    for (const auto& v : against_zero.per_n) CHECK(v.value == doctest::Approx(1.0));

    // a rank-1 unit-norm difference decays like 1/N
    auto rank1 = [](const GridSize& n) {
        CMat m = CMat::Zero(n.count(), n.count());
        m(0, 0) = 1.0;
        return m;
    };
    const auto decays = dacs_estimate(rank1, build_zero, {GridSize{10}, GridSize{50}});
    CHECK(decays.per_n[0].value == doctest::Approx(0.1));
    CHECK(decays.per_n[1].value == doctest::Approx(0.02));
    CHECK(decays.estimate == doctest::Approx(0.02));

    // size mismatch across builders
    auto bigger = [](const GridSize& n) {
        return CMat(CMat::Zero(n.count() + 1, n.count() + 1));
    };
    CHECK_THROWS_AS(dacs_estimate(build_zero, bigger, {GridSize{4}}), std::invalid_argument);
}

TEST_CASE("verify_sigma tracks the Toeplitz symbol") {
    const GltExpr t = GltExpr::toeplitz(Stencil::laplacian(1));
    auto build = [&](const GridSize& n) { return build_matrix_dense(t, n); };
    const auto report = verify_sigma(build, laplacian_symbol_1d(),
                                     {GridSize{31}, GridSize{63}, GridSize{127}}, false);
    CHECK(report.trend_ok);
    CHECK(report.levels.back().report.wasserstein1 <= 0.03);
    for (std::size_t i = 1; i < report.levels.size(); ++i)
        CHECK(report.levels[i].report.wasserstein1 <=
              report.levels[i - 1].report.wasserstein1 * 1.1);

    auto zero_seq = [](const GridSize& n) { return CMat(CMat::Zero(n.count(), n.count())); };
    const auto zero_report =
        verify_sigma(zero_seq, SeparableSymbol::zero(1), {GridSize{8}, GridSize{16}}, false);
    for (const auto& level : zero_report.levels) CHECK(level.report.wasserstein1 == 0.0);

    // diagonal samplings of x against the uniform law of a(x) = x
    const GltExpr dx = GltExpr::diag_d(1, CoefficientFn::expression("x1"));
    auto build_dx = [&](const GridSize& n) { return build_matrix_dense(dx, n); };
    const auto diag_report = verify_sigma(build_dx, derive_symbol(dx),
                                          {GridSize{32}, GridSize{64}, GridSize{128}}, false);
    CHECK(diag_report.trend_ok);
    CHECK(diag_report.levels.back().report.wasserstein1 < 0.02);
}

TEST_CASE("the monotone-trend verdict flags diverging sequences") {
    // sigma values grow with n while the symbol stays at zero
    auto diverging = [](const GridSize& n) {
        return CMat(static_cast<double>(n.count()) * CMat::Identity(n.count(), n.count()));
    };
    const auto report = verify_sigma(diverging, SeparableSymbol::zero(1),
                                     {GridSize{4}, GridSize{8}, GridSize{16}}, false);
    CHECK(!report.trend_ok);
    CHECK(report.levels[2].report.wasserstein1 > report.levels[0].report.wasserstein1);
}

TEST_CASE("verify_lambda symmetrizes and reports the skew ratio") {
    const GltExpr t = GltExpr::toeplitz(Stencil::laplacian(1));
    auto build = [&](const GridSize& n) { return build_matrix_dense(t, n); };
    const auto hermitian_route =
        verify_lambda(build, laplacian_symbol_1d(), {GridSize{31}, GridSize{63}}, true);
    const auto plain_route =
        verify_lambda(build, laplacian_symbol_1d(), {GridSize{31}, GridSize{63}}, false);
    for (std::size_t i = 0; i < hermitian_route.levels.size(); ++i) {
        CHECK(hermitian_route.levels[i].skew_ratio == 0.0);
        CHECK(hermitian_route.levels[i].report.wasserstein1 ==
              doctest::Approx(plain_route.levels[i].report.wasserstein1));
    }

    CMat asym(2, 2);
    asym << 1, 1, 0, 1;
    auto asym_seq = [&](const GridSize&) { return asym; };
    CHECK_THROWS_AS(
        verify_lambda(asym_seq, laplacian_symbol_1d(), {GridSize{2}}, false),
        std::invalid_argument);
}

TEST_CASE("zero distribution scores") {
    auto zero_seq = [](const GridSize& n) { return CMat(CMat::Zero(n.count(), n.count())); };
    for (const auto& level : zero_distribution_score(zero_seq, {GridSize{4}, GridSize{8}})) {
        CHECK(level.fraction_above_eps == 0.0);
        CHECK(level.mean_sigma == 0.0);
    }

    auto rank1 = [](const GridSize& n) {
        CMat m = CMat::Zero(n.count(), n.count());
        m(0, n.count() - 1) = 1.0;
        return m;
    };
    const auto levels = zero_distribution_score(rank1, {GridSize{10}, GridSize{100}});
    CHECK(levels[0].fraction_above_eps == doctest::Approx(0.1));
    CHECK(levels[1].fraction_above_eps == doctest::Approx(0.01));
}

TEST_CASE("sequence distance shrinks with symbol distance (acs convergence)") {
    // kappa_m = (1 - 1/m) kappa: both pmea(kappa_m - kappa) and
    // p(A_m - A) at fixed n decrease as m grows
    const GltExpr base = GltExpr::product(
        {GltExpr::diag_d(1, CoefficientFn::expression("x1")),
         GltExpr::toeplitz(Stencil::laplacian(1))});
    const GridSize n{256};
    const CMat a = build_matrix_dense(base, n);
    const SeparableSymbol symbol = derive_symbol(base);

    double previous_p = 2.0, previous_mea = 2.0;
    for (int m : {2, 4, 8, 16}) {
        const double shrink = 1.0 - 1.0 / m;
        const CMat am = build_matrix_dense(GltExpr::scaled(shrink, base), n);
        const double p = acs_p(CMat(am - a));

        std::vector<Complex> diff_samples;
        for (double x = 0.05; x < 1.0; x += 0.05)
            for (double th = -3.1; th < 3.15; th += 0.1)
                diff_samples.push_back((shrink - 1.0) *
                                       symbol.eval(std::vector<double>{x}, std::vector<double>{th}));
        const double mea = pmea(std::span<const Complex>(diff_samples));
        CHECK(p < previous_p);
        CHECK(mea < previous_mea);
        previous_p = p;
        previous_mea = mea;
    }
}

}  // TEST_SUITE
