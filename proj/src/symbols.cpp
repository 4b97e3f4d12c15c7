#include "rglt/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parallel.hpp"

namespace rglt {

SeparableSymbol::SeparableSymbol(int dim, Domain domain, std::vector<SymbolTerm> terms)
    : dim_(dim), domain_(std::move(domain)), terms_(std::move(terms)) {
    if (domain_.dim() != dim_)
        throw std::invalid_argument("SeparableSymbol: domain dimension mismatch");
    for (const auto& term : terms_)
        if (term.stencil.dim() != dim_)
            throw std::invalid_argument("SeparableSymbol: stencil dimension mismatch");
}

SeparableSymbol SeparableSymbol::zero(int dim) {
    return SeparableSymbol(dim, Domain::hypercube(dim), {});
}

SeparableSymbol SeparableSymbol::generic(
    int dim, Domain domain,
    std::function<Complex(std::span<const double>, std::span<const double>)> evaluator) {
    SeparableSymbol s(dim, std::move(domain), {});
    s.generic_ = std::move(evaluator);
    return s;
}

Complex SeparableSymbol::eval(std::span<const double> x, std::span<const double> theta) const {
    if (generic_) return generic_(x, theta);
    Complex sum(0.0, 0.0);
    for (const auto& term : terms_) sum += term.coeff(x) * term.stencil.eval(theta);
    return sum;
}

SeparableSymbol SeparableSymbol::restricted_to(const Domain& domain) const {
    SeparableSymbol out = *this;
    if (domain.dim() != dim_)
        throw std::invalid_argument("SeparableSymbol::restricted_to: dimension mismatch");
    out.domain_ = domain;
    return out;
}

namespace {

// x grid i/(nx+1) restricted to the symbol domain, theta grid -pi + 2pi j/nt.
template <typename Visit>
void for_each_symbol_sample(const SeparableSymbol& symbol, int nx, int ntheta, Visit&& visit) {
    if (nx < 1 || ntheta < 1)
        throw std::invalid_argument("sample_symbol: nx and ntheta must be >= 1");
    const int d = symbol.dim();
    const GridSize xgrid = GridSize::cubic(d, nx);
    std::vector<std::vector<double>> xs;
    for_each_grid_point(xgrid, [&](const MultiIndex&, std::span<const double> p) {
        if (symbol.domain().membership(p) == Region::Inside)
            xs.emplace_back(p.begin(), p.end());
    });
    if (xs.empty()) throw std::runtime_error("sample_symbol: no x grid point inside the domain");

    std::vector<double> theta(static_cast<std::size_t>(d));
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d), 0);
    const double two_pi = 2.0 * std::numbers::pi;
    while (true) {
        for (int r = 0; r < d; ++r)
            theta[static_cast<std::size_t>(r)] =
                -std::numbers::pi + two_pi * static_cast<double>(idx[static_cast<std::size_t>(r)]) /
                                        static_cast<double>(ntheta);
        for (const auto& x : xs) visit(std::span<const double>(x), std::span<const double>(theta));
        int r = d - 1;
        while (r >= 0 && ++idx[static_cast<std::size_t>(r)] == ntheta) {
            idx[static_cast<std::size_t>(r)] = 0;
            --r;
        }
        if (r < 0) break;
    }
}

}  // namespace

std::vector<double> sample_symbol(const SeparableSymbol& symbol, int nx, int ntheta,
                                  SampleMode mode) {
    if (mode == SampleMode::Complex)
        throw std::invalid_argument("sample_symbol: use sample_symbol_complex for complex mode");
    std::vector<double> out;
    for_each_symbol_sample(symbol, nx, ntheta,
                           [&](std::span<const double> x, std::span<const double> theta) {
                               const Complex v = symbol.eval(x, theta);
                               out.push_back(mode == SampleMode::Modulus ? std::abs(v) : v.real());
                           });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Complex> sample_symbol_complex(const SeparableSymbol& symbol, int nx, int ntheta) {
    std::vector<Complex> out;
    for_each_symbol_sample(symbol, nx, ntheta,
                           [&](std::span<const double> x, std::span<const double> theta) {
                               out.push_back(symbol.eval(x, theta));
                           });
    return out;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double q) {
    const auto n = static_cast<std::int64_t>(sorted.size());
    auto idx = static_cast<std::int64_t>(q * static_cast<double>(n));
    idx = std::clamp<std::int64_t>(idx, 0, n - 1);
    return sorted[static_cast<std::size_t>(idx)];
}

}  // namespace

nlohmann::json DistributionReport::to_json() const {
    nlohmann::json gaps = nlohmann::json::array();
    for (const auto& g : test_functional_gaps) gaps.push_back({{"F", g.name}, {"gap", g.gap}});
    return {{"wasserstein1", wasserstein1},
            {"cdf_sup", cdf_sup},
            {"sample_sizes", {sample_sizes[0], sample_sizes[1]}},
            {"test_functional_gaps", gaps}};
}

DistributionReport compare_distributions(std::vector<double> spectrum,
                                         std::vector<double> symbol_samples) {
    if (spectrum.empty() || symbol_samples.empty())
        throw std::invalid_argument("compare_distributions: empty input");
    std::sort(spectrum.begin(), spectrum.end());
    std::sort(symbol_samples.begin(), symbol_samples.end());

    DistributionReport report;
    report.sample_sizes = {static_cast<std::int64_t>(spectrum.size()),
                           static_cast<std::int64_t>(symbol_samples.size())};

    const std::int64_t m =
        std::max<std::int64_t>(report.sample_sizes[0], report.sample_sizes[1]);
    double w1 = 0.0;
    for (std::int64_t i = 0; i < m; ++i) {
        const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(m);
        w1 += std::abs(quantile_sorted(spectrum, q) - quantile_sorted(symbol_samples, q));
    }
    report.wasserstein1 = w1 / static_cast<double>(m);

    // sup |F_a - F_b| over the merged support
    {
        double sup = 0.0;
        std::size_t ia = 0, ib = 0;
        const std::size_t na = spectrum.size(), nb = symbol_samples.size();
        while (ia < na || ib < nb) {
            double t;
            if (ib == nb || (ia < na && spectrum[ia] <= symbol_samples[ib]))
                t = spectrum[ia];
            else
                t = symbol_samples[ib];
            while (ia < na && spectrum[ia] <= t) ++ia;
            while (ib < nb && symbol_samples[ib] <= t) ++ib;
            sup = std::max(sup, std::abs(static_cast<double>(ia) / static_cast<double>(na) -
                                         static_cast<double>(ib) / static_cast<double>(nb)));
        }
        report.cdf_sup = sup;
    }

    // fixed F family over the merged range
    const double lo = std::min(spectrum.front(), symbol_samples.front());
    const double hi = std::max(spectrum.back(), symbol_samples.back());
    const double width = hi > lo ? hi - lo : 1.0;
    auto mean_of = [](const std::vector<double>& v, const std::function<double(double)>& f) {
        double s = 0.0;
        for (double x : v) s += f(x);
        return s / static_cast<double>(v.size());
    };
    std::vector<std::pair<std::string, std::function<double(double)>>> family;
    family.emplace_back("clamped_x", [lo, hi](double x) { return std::clamp(x, lo, hi); });
    family.emplace_back("clamped_x2", [lo, hi](double x) {
        const double c = std::clamp(x, lo, hi);
        return c * c;
    });
    for (double q : {0.25, 0.5, 0.75}) {
        const double center = lo + q * (hi - lo);
        const double w = width / 4.0;
        family.emplace_back("bump_q" + std::to_string(static_cast<int>(q * 100)),
                            [center, w](double x) {
                                const double t = (x - center) / w;
                                return std::exp(-t * t);
                            });
    }
    for (const auto& [name, f] : family)
        report.test_functional_gaps.push_back(
            {name, std::abs(mean_of(spectrum, f) - mean_of(symbol_samples, f))});
    return report;
}

double acs_p(std::vector<double> singular_values, std::int64_t n) {
    if (n < 1) throw std::invalid_argument("acs_p: matrix size must be >= 1");
    std::sort(singular_values.begin(), singular_values.end(), std::greater<double>());
    singular_values.resize(static_cast<std::size_t>(n), 0.0);
    double best = 1.0;  // i = N+1 term, sigma_{N+1} = 0
    for (std::int64_t i = 1; i <= n; ++i)
        best = std::min(best, static_cast<double>(i - 1) / static_cast<double>(n) +
                                  singular_values[static_cast<std::size_t>(i - 1)]);
    return best;
}

double acs_p(const CMat& c) {
    if (c.rows() != c.cols()) throw std::invalid_argument("acs_p: matrix not square");
    if (c.rows() == 0) return 0.0;
    return acs_p(singvals(c).values, c.rows());
}

double pmea(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("pmea: empty sample set");
    std::vector<double> mags(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) mags[i] = std::abs(samples[i]);
    std::sort(mags.begin(), mags.end());
    const auto n = static_cast<double>(mags.size());
    // candidates L in {0} and the sample magnitudes; the objective is
    // piecewise linear in L with breakpoints exactly there
    double best = 1.0;  // L = 0: everything above unless zeros present
    {
        const auto above = mags.end() - std::upper_bound(mags.begin(), mags.end(), 0.0);
        best = static_cast<double>(above) / n;
    }
    for (std::size_t i = 0; i < mags.size(); ++i) {
        const double l = mags[i];
        const auto above = mags.end() - std::upper_bound(mags.begin(), mags.end(), l);
        best = std::min(best, static_cast<double>(above) / n + l);
    }
    return best;
}

double pmea(std::span<const Complex> samples) {
    if (samples.empty()) throw std::invalid_argument("pmea: empty sample set");
    std::vector<double> mags(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) mags[i] = std::abs(samples[i]);
    return pmea(std::span<const double>(mags));
}

nlohmann::json DacsReport::to_json() const {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& v : per_n) per.push_back({{"n", v.n.extents().components()}, {"p", v.value}});
    return {{"per_n", per}, {"dacs_estimate", estimate}, {"estimate_is_last_level", true}};
}

DacsReport dacs_estimate(const SeqBuilder& a, const SeqBuilder& b,
                         const std::vector<GridSize>& sweep) {
    DacsReport report;
    for (const GridSize& n : sweep) {
        const CMat am = a(n);
        const CMat bm = b(n);
        if (am.rows() != bm.rows() || am.cols() != bm.cols())
            throw std::invalid_argument("dacs_estimate: size mismatch at n = " +
                                        n.extents().to_string());
        report.per_n.push_back({n, acs_p(CMat(am - bm))});
    }
    if (!report.per_n.empty()) report.estimate = report.per_n.back().value;
    return report;
}

namespace {

bool trend_non_increasing(const std::vector<ConvergenceLevel>& levels) {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i].report.wasserstein1 > 1.10 * levels[i - 1].report.wasserstein1) return false;
    return true;
}

// nx = ntheta sized so the admissible sample count reaches the target
std::pair<int, int> sampling_grid(const SeparableSymbol& symbol, std::int64_t target) {
    const int d = symbol.dim();
    int m = std::max(2, static_cast<int>(std::ceil(
                            std::pow(static_cast<double>(target), 1.0 / (2.0 * d)))));
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::int64_t inside = 0;
        for_each_grid_point(GridSize::cubic(d, m), [&](const MultiIndex&, std::span<const double> p) {
            if (symbol.domain().membership(p) == Region::Inside) ++inside;
        });
        double total = static_cast<double>(inside);
        for (int r = 0; r < d; ++r) total *= m;
        if (total >= static_cast<double>(target) || inside == 0) break;
        m = static_cast<int>(std::ceil(m * std::pow(static_cast<double>(target) / total,
                                                    1.0 / (2.0 * d)))) + 1;
    }
    return {m, m};
}

ConvergenceReport verify_impl(const SeqBuilder& seq, const SeparableSymbol& symbol,
                              const std::vector<GridSize>& sweep, bool lambda_mode,
                              bool hermitian_part, bool use_reduced_size,
                              std::int64_t symbol_samples) {
    ConvergenceReport report;
    report.use_reduced_size = use_reduced_size;
    report.levels.resize(sweep.size());
    // per-n work items run in parallel, the report merges in n-order
    internal::parallel_sweep(sweep.size(), [&](std::size_t i) {
        const GridSize& n = sweep[i];
        CMat a = seq(n);
        ConvergenceLevel level;
        level.n = n;
        level.size = a.rows();

        std::vector<double> values;
        if (lambda_mode) {
            if (hermitian_part) {
                const CMat herm = 0.5 * (a + a.adjoint());
                const CMat skew = a - herm;
                level.skew_ratio =
                    skew.norm() / std::sqrt(static_cast<double>(std::max<std::int64_t>(1, a.rows())));
                values = eigvals_hermitian(herm).values;
            } else {
                values = eigvals_hermitian(a).values;
            }
        } else {
            values = singvals(a).values;
        }

        const std::int64_t target =
            symbol_samples > 0 ? symbol_samples
                               : 50 * std::max<std::int64_t>(1, static_cast<std::int64_t>(values.size()));
        const auto [nx, ntheta] = sampling_grid(symbol, target);
        std::vector<double> sym = sample_symbol(symbol, nx, ntheta,
                                                lambda_mode ? SampleMode::Real : SampleMode::Modulus);
        level.report = compare_distributions(std::move(values), std::move(sym));
        report.levels[i] = std::move(level);
    });
    report.trend_ok = trend_non_increasing(report.levels);
    return report;
}

}  // namespace

nlohmann::json ConvergenceReport::to_json() const {
    nlohmann::json js = nlohmann::json::array();
    for (const auto& level : levels)
        js.push_back({{"n", level.n.extents().components()},
                      {"size", level.size},
                      {"skew_ratio", level.skew_ratio},
                      {"report", level.report.to_json()}});
    return {{"levels", js}, {"trend_ok", trend_ok}, {"use_reduced_size", use_reduced_size}};
}

ConvergenceReport verify_sigma(const SeqBuilder& seq, const SeparableSymbol& symbol,
                               const std::vector<GridSize>& sweep, bool use_reduced_size,
                               std::int64_t symbol_samples) {
    return verify_impl(seq, symbol, sweep, /*lambda_mode=*/false, /*hermitian_part=*/false,
                       use_reduced_size, symbol_samples);
}

ConvergenceReport verify_lambda(const SeqBuilder& seq, const SeparableSymbol& symbol,
                                const std::vector<GridSize>& sweep, bool hermitian_part,
                                std::int64_t symbol_samples) {
    return verify_impl(seq, symbol, sweep, /*lambda_mode=*/true, hermitian_part,
                       /*use_reduced_size=*/true, symbol_samples);
}

std::vector<ZeroDistLevel> zero_distribution_score(const SeqBuilder& seq,
                                                   const std::vector<GridSize>& sweep) {
    std::vector<ZeroDistLevel> out;
    for (const GridSize& n : sweep) {
        const auto sv = singvals(seq(n)).values;
        ZeroDistLevel level;
        level.n = n;
        if (!sv.empty()) {
            const double eps = 1e-6 * sv.back();
            std::int64_t above = 0;
            double sum = 0.0;
            for (double s : sv) {
                if (s > eps) ++above;
                sum += s;
            }
            level.fraction_above_eps = static_cast<double>(above) / static_cast<double>(sv.size());
            level.mean_sigma = sum / static_cast<double>(sv.size());
        }
        out.push_back(level);
    }
    return out;
}

}  // namespace rglt
