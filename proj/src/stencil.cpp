#include "rglt/stencil.hpp"

#include <sstream>
#include <stdexcept>

#include "rglt/exprlang.hpp"

namespace rglt {

Stencil::Stencil(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("Stencil: dimension must be >= 1");
}

Stencil::Stencil(int dim, OffsetMap coefficients) : Stencil(dim) {
    for (const auto& [offset, value] : coefficients)
        if (static_cast<int>(offset.size()) != dim)
            throw std::invalid_argument("Stencil: offset dimension mismatch");
    coeffs_ = std::move(coefficients);
}

Stencil Stencil::laplacian(int dim) {
    Stencil s(dim);
    std::vector<std::int64_t> zero(static_cast<std::size_t>(dim), 0);
    s.set(zero, Complex(2.0 * dim, 0.0));
    for (int axis = 0; axis < dim; ++axis) {
        auto off = zero;
        off[static_cast<std::size_t>(axis)] = 1;
        s.set(off, Complex(-1.0, 0.0));
        off[static_cast<std::size_t>(axis)] = -1;
        s.set(off, Complex(-1.0, 0.0));
    }
    return s;
}

Stencil Stencil::identity(int dim) {
    Stencil s(dim);
    s.set(std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0), Complex(1.0, 0.0));
    return s;
}

Stencil& Stencil::set(const std::vector<std::int64_t>& offset, Complex value) {
    if (static_cast<int>(offset.size()) != dim_)
        throw std::invalid_argument("Stencil::set: offset dimension mismatch");
    if (value == Complex(0.0, 0.0))
        coeffs_.erase(offset);
    else
        coeffs_[offset] = value;
    return *this;
}

Complex Stencil::eval(std::span<const double> theta) const {
    if (static_cast<int>(theta.size()) != dim_)
        throw std::invalid_argument("Stencil::eval: theta dimension mismatch");
    Complex sum(0.0, 0.0);
    for (const auto& [offset, value] : coeffs_) {
        double phase = 0.0;
        for (int r = 0; r < dim_; ++r)
            phase += static_cast<double>(offset[static_cast<std::size_t>(r)]) * theta[static_cast<std::size_t>(r)];
        sum += value * std::polar(1.0, phase);
    }
    return sum;
}

Stencil Stencil::scaled(Complex factor) const {
    Stencil out(dim_);
    if (factor == Complex(0.0, 0.0)) return out;
    for (const auto& [offset, value] : coeffs_) out.coeffs_[offset] = factor * value;
    return out;
}

Stencil Stencil::convolved(const Stencil& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("Stencil::convolved: dimension mismatch");
    Stencil out(dim_);
    for (const auto& [ka, va] : coeffs_)
        for (const auto& [kb, vb] : other.coeffs_) {
            std::vector<std::int64_t> k(ka.size());
            for (std::size_t r = 0; r < k.size(); ++r) k[r] = ka[r] + kb[r];
            out.coeffs_[k] += va * vb;
        }
    std::erase_if(out.coeffs_, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
    return out;
}

Stencil Stencil::conjugated() const {
    Stencil out(dim_);
    for (const auto& [offset, value] : coeffs_) {
        std::vector<std::int64_t> neg(offset.size());
        for (std::size_t r = 0; r < neg.size(); ++r) neg[r] = -offset[r];
        out.coeffs_[neg] = std::conj(value);
    }
    return out;
}

Stencil Stencil::plus(const Stencil& other) const {
    if (other.dim_ != dim_) throw std::invalid_argument("Stencil::plus: dimension mismatch");
    Stencil out = *this;
    for (const auto& [offset, value] : other.coeffs_) out.coeffs_[offset] += value;
    std::erase_if(out.coeffs_, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
    return out;
}

nlohmann::json Stencil::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [offset, value] : coeffs_) {
        std::ostringstream key;
        for (std::size_t r = 0; r < offset.size(); ++r) key << (r ? "," : "") << offset[r];
        j[key.str()] = {value.real(), value.imag()};
    }
    return j;
}

Stencil Stencil::from_json(const nlohmann::json& j) {
    if (!j.is_object() || j.empty())
        throw std::invalid_argument("Stencil::from_json: expected a nonempty object");
    OffsetMap coeffs;
    int dim = -1;
    for (const auto& [key, value] : j.items()) {
        std::vector<std::int64_t> offset;
        std::istringstream is(key);
        std::string part;
        while (std::getline(is, part, ',')) offset.push_back(std::stoll(part));
        if (dim < 0) dim = static_cast<int>(offset.size());
        if (static_cast<int>(offset.size()) != dim)
            throw std::invalid_argument("Stencil::from_json: inconsistent offset arity");
        Complex v;
        if (value.is_number())
            v = Complex(value.get<double>(), 0.0);
        else
            v = Complex(value.at(0).get<double>(), value.at(1).get<double>());
        coeffs[offset] = v;
    }
    return Stencil(dim, std::move(coeffs));
}

CoefficientFn CoefficientFn::constant(Complex value) {
    return {[value](std::span<const double>) { return value; }, "constant"};
}

CoefficientFn CoefficientFn::expression(const std::string& source) {
    auto expr = std::make_shared<exprlang::Expr>(
        exprlang::parse(source, exprlang::Context::Scalar));
    return {[expr](std::span<const double> p) {
                return Complex(exprlang::eval_scalar(*expr, p), 0.0);
            },
            source};
}

CoefficientFn CoefficientFn::indicator(const Domain& domain) {
    return {[domain](std::span<const double> p) {
                return Complex(domain.membership(p) != Region::Outside ? 1.0 : 0.0, 0.0);
            },
            "chi(" + domain.kind() + ")"};
}

CoefficientFn CoefficientFn::product(const CoefficientFn& a, const CoefficientFn& b) {
    return {[fa = a.fn, fb = b.fn](std::span<const double> p) { return fa(p) * fb(p); },
            "(" + a.provenance + ")*(" + b.provenance + ")"};
}

CoefficientFn CoefficientFn::scaled(Complex factor, const CoefficientFn& a) {
    return {[factor, fa = a.fn](std::span<const double> p) { return factor * fa(p); },
            "scaled(" + a.provenance + ")"};
}

CoefficientFn CoefficientFn::conjugated(const CoefficientFn& a) {
    return {[fa = a.fn](std::span<const double> p) { return std::conj(fa(p)); },
            "conj(" + a.provenance + ")"};
}

}  // namespace rglt
