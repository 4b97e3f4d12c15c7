#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rglt/domain.hpp"
#include "rglt/multiindex.hpp"

namespace rglt {

using Complex = std::complex<double>;

/// Finite Fourier-coefficient map k -> f_k for the trigonometric polynomial
/// f(theta) = sum_k f_k e^{i k.theta}; also the offset table of the Toeplitz
/// generator T_n(f).
class Stencil {
public:
    using OffsetMap = std::map<std::vector<std::int64_t>, Complex>;

    explicit Stencil(int dim);
    Stencil(int dim, OffsetMap coefficients);

    /// 1D {0: 2, +1: -1, -1: -1}, the second-difference generator.
    static Stencil laplacian(int dim);
    static Stencil identity(int dim);

    int dim() const { return dim_; }
    std::size_t support_size() const { return coeffs_.size(); }
    const OffsetMap& coefficients() const { return coeffs_; }

    Stencil& set(const std::vector<std::int64_t>& offset, Complex value);

    Complex eval(std::span<const double> theta) const;

    Stencil scaled(Complex factor) const;
    /// Fourier coefficients of the product of two trigonometric polynomials.
    Stencil convolved(const Stencil& other) const;
    /// Represents conj(f): offsets negated, coefficients conjugated.
    Stencil conjugated() const;
    Stencil plus(const Stencil& other) const;

    bool operator==(const Stencil&) const = default;

    /// JSON object mapping comma-joined offsets to [re, im] pairs.
    nlohmann::json to_json() const;
    static Stencil from_json(const nlohmann::json& j);

private:
    int dim_;
    OffsetMap coeffs_;
};

/// A coefficient a : [0,1]^d -> C, deterministic in its argument.
struct CoefficientFn {
    std::function<Complex(std::span<const double>)> fn;
    std::string provenance = "builtin";

    Complex operator()(std::span<const double> p) const { return fn(p); }

    static CoefficientFn constant(Complex value);
    /// Parses a scalar expression over x1..xd.
    static CoefficientFn expression(const std::string& source);
    /// chi_Omega: 1 on the domain (boundary included), 0 elsewhere.
    static CoefficientFn indicator(const Domain& domain);
    /// Pointwise product a*b.
    static CoefficientFn product(const CoefficientFn& a, const CoefficientFn& b);
    static CoefficientFn scaled(Complex factor, const CoefficientFn& a);
    static CoefficientFn conjugated(const CoefficientFn& a);
};

}  // namespace rglt
