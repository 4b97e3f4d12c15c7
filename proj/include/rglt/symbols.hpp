#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rglt/domain.hpp"
#include "rglt/spectra.hpp"
#include "rglt/stencil.hpp"

namespace rglt {

struct SymbolTerm {
    CoefficientFn coeff;
    Stencil stencil;
};

/// kappa(x, theta) = sum_j a_j(x) f_j(theta) over domain x [-pi,pi]^d.
/// A symbol over a subdomain evaluates only at x inside it (the reduced
/// symbol). Falls back to a generic pointwise evaluator when a product
/// expansion exceeds the separable term cap.
class SeparableSymbol {
public:
    SeparableSymbol(int dim, Domain domain, std::vector<SymbolTerm> terms);
    static SeparableSymbol zero(int dim);
    static SeparableSymbol generic(
        int dim, Domain domain,
        std::function<Complex(std::span<const double>, std::span<const double>)> evaluator);

    int dim() const { return dim_; }
    const Domain& domain() const { return domain_; }
    bool separable() const { return !terms_.empty() || !generic_; }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<SymbolTerm>& terms() const { return terms_; }

    Complex eval(std::span<const double> x, std::span<const double> theta) const;

    /// Same terms, restricted to (sampled over) another domain.
    SeparableSymbol restricted_to(const Domain& domain) const;

private:
    int dim_;
    Domain domain_;
    std::vector<SymbolTerm> terms_;
    std::function<Complex(std::span<const double>, std::span<const double>)> generic_;
};

enum class SampleMode { Modulus, Real, Complex };

/// Evaluates the symbol on the tensor grid {x_i = i/(nx+1)} x {theta_j = -pi
/// + 2 pi j / ntheta}, keeping only x inside the symbol's domain. Real modes
/// return sorted values. Throws when no admissible x point exists.
std::vector<double> sample_symbol(const SeparableSymbol& symbol, int nx, int ntheta,
                                  SampleMode mode);
std::vector<Complex> sample_symbol_complex(const SeparableSymbol& symbol, int nx, int ntheta);

struct FunctionalGap {
    std::string name;
    double gap = 0.0;
};

/// Distances between two empirical value distributions. Wasserstein-1 via
/// quantile resampling to the common size; sup-CDF on the merged support;
/// test-functional gaps for the fixed family (clamped x, clamped x^2, three
/// bumps at quartiles of the merged range).
struct DistributionReport {
    double wasserstein1 = 0.0;
    double cdf_sup = 0.0;
    std::array<std::int64_t, 2> sample_sizes{0, 0};
    std::vector<FunctionalGap> test_functional_gaps;

    nlohmann::json to_json() const;
};

DistributionReport compare_distributions(std::vector<double> spectrum,
                                         std::vector<double> symbol_samples);

/// p(C) = min_{i=1..N+1} {(i-1)/N + sigma_i(C)} with sigma sorted descending
/// and sigma_{N+1} = 0; in [0, min(1, sigma_1)].
double acs_p(const CMat& c);
/// Same, from precomputed singular values of an N x N matrix.
double acs_p(std::vector<double> singular_values, std::int64_t n);

/// inf over candidate levels L of (fraction of |f| samples above L) + L; the
/// empirical measure stands in for the Lebesgue measure of the domain.
double pmea(std::span<const Complex> samples);
double pmea(std::span<const double> samples);

using SeqBuilder = std::function<CMat(const GridSize&)>;

struct SweepValue {
    GridSize n;
    double value = 0.0;
};

/// Per-n p(A_n - B_n); the limsup is approximated by the value at the largest
/// n and reported as such.
struct DacsReport {
    std::vector<SweepValue> per_n;
    double estimate = 0.0;

    nlohmann::json to_json() const;
};

DacsReport dacs_estimate(const SeqBuilder& a, const SeqBuilder& b,
                         const std::vector<GridSize>& sweep);

struct ConvergenceLevel {
    GridSize n;
    std::int64_t size = 0;
    DistributionReport report;
    double skew_ratio = 0.0;  // ||A - herm(A)||_F / sqrt(size); 0 in sigma mode
};

/// Distribution-distance sequence over a sweep plus the monotone-trend
/// verdict: Wasserstein-1 non-increasing with 10% slack between levels.
struct ConvergenceReport {
    std::vector<ConvergenceLevel> levels;
    bool trend_ok = false;
    bool use_reduced_size = false;

    nlohmann::json to_json() const;
};

/// Singular values of A_n against |symbol| samples per sweep level.
/// symbol_samples == 0 requests the default of at least 50x the spectrum.
ConvergenceReport verify_sigma(const SeqBuilder& seq, const SeparableSymbol& symbol,
                               const std::vector<GridSize>& sweep, bool use_reduced_size,
                               std::int64_t symbol_samples = 0);

/// Eigenvalues against symbol samples. With hermitian_part the matrices are
/// symmetrized first and the discarded skew part is reported as the ratio
/// ||skew||_F / sqrt(size), which must vanish for the spectral claim to
/// apply; without it the input must be Hermitian.
ConvergenceReport verify_lambda(const SeqBuilder& seq, const SeparableSymbol& symbol,
                                const std::vector<GridSize>& sweep, bool hermitian_part,
                                std::int64_t symbol_samples = 0);

struct ZeroDistLevel {
    GridSize n;
    double fraction_above_eps = 0.0;  // eps = 1e-6 * max sigma
    double mean_sigma = 0.0;
};

/// Both columns must trend to zero for a zero-distributed sequence.
std::vector<ZeroDistLevel> zero_distribution_score(const SeqBuilder& seq,
                                                   const std::vector<GridSize>& sweep);

}  // namespace rglt
