#include "rglt/spectra.hpp"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace rglt {

namespace {

bool is_real(const CMat& a) {
    return a.size() == 0 || a.imag().cwiseAbs().maxCoeff() == 0.0;
}

SizeMeta square_meta(const CMat& a) {
    SizeMeta m;
    m.matrix_size = a.rows();
    m.reduced_size = a.rows();
    m.full_size = a.rows();
    return m;
}

}  // namespace

double hermitian_defect(const CMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_defect: matrix not square");
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

SpectralSample eigvals_hermitian(const CMat& a) {
    const double defect = hermitian_defect(a);
    const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
    if (defect > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("eigvals_hermitian: input not Hermitian, max asymmetry " +
                                    std::to_string(defect));
    SpectralSample out;
    out.kind = SpectralKind::EigHermitian;
    out.meta = square_meta(a);
    if (a.rows() == 0) return out;

    Eigen::VectorXd ev;
    if (is_real(a)) {
        Eigen::SelfAdjointEigenSolver<RMat> solver(a.real(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigvals_hermitian: iteration cap exceeded");
        ev = solver.eigenvalues();
    } else {
        Eigen::SelfAdjointEigenSolver<CMat> solver(a, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigvals_hermitian: iteration cap exceeded");
        ev = solver.eigenvalues();
    }
    out.values.assign(ev.data(), ev.data() + ev.size());
    std::sort(out.values.begin(), out.values.end());
    return out;
}

std::vector<std::complex<double>> eigvals_general(const CMat& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("eigvals_general: matrix not square");
    if (a.rows() == 0) return {};
    Eigen::VectorXcd ev;
    if (is_real(a)) {
        Eigen::EigenSolver<RMat> solver(a.real(), /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigvals_general: QR iteration did not converge");
        ev = solver.eigenvalues();
    } else {
        Eigen::ComplexEigenSolver<CMat> solver(a, /*computeEigenvectors=*/false);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigvals_general: QR iteration did not converge");
        ev = solver.eigenvalues();
    }
    return std::vector<std::complex<double>>(ev.data(), ev.data() + ev.size());
}

SpectralSample spectral_sample_of(const std::vector<std::complex<double>>& eigenvalues,
                                  SpectralKind kind) {
    if (kind != SpectralKind::EigGeneralRealPart && kind != SpectralKind::EigGeneralModulus)
        throw std::invalid_argument("spectral_sample_of: expected a general-eigenvalue kind");
    SpectralSample out;
    out.kind = kind;
    out.meta.matrix_size = static_cast<std::int64_t>(eigenvalues.size());
    out.meta.reduced_size = out.meta.matrix_size;
    out.meta.full_size = out.meta.matrix_size;
    out.values.reserve(eigenvalues.size());
    for (const auto& v : eigenvalues)
        out.values.push_back(kind == SpectralKind::EigGeneralModulus ? std::abs(v) : v.real());
    std::sort(out.values.begin(), out.values.end());
    return out;
}

SpectralSample singvals(const CMat& a) {
    SpectralSample out;
    out.kind = SpectralKind::Singular;
    out.meta.matrix_size = std::min(a.rows(), a.cols());
    out.meta.reduced_size = out.meta.matrix_size;
    out.meta.full_size = out.meta.matrix_size;
    if (a.size() == 0) return out;
    Eigen::VectorXd sv;
    if (is_real(a)) {
        sv = Eigen::BDCSVD<RMat>(a.real()).singularValues();
    } else {
        sv = Eigen::BDCSVD<CMat>(a).singularValues();
    }
    out.values.assign(sv.data(), sv.data() + sv.size());
    std::sort(out.values.begin(), out.values.end());
    return out;
}

double spectral_norm(const CMat& a) {
    if (a.size() == 0) return 0.0;
    const auto sv = singvals(a);
    return sv.values.empty() ? 0.0 : sv.values.back();
}

CMat pseudoinverse(const CMat& a) {
    if (a.size() == 0) return CMat(a.cols(), a.rows());
    Eigen::BDCSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = 1e-12 * (sv.size() ? sv(0) : 0.0);
    Eigen::VectorXd inv = sv;
    for (Eigen::Index i = 0; i < sv.size(); ++i) inv(i) = sv(i) > cutoff ? 1.0 / sv(i) : 0.0;
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CMat matrix_function(const CMat& a, const std::function<double(double)>& f) {
    const double defect = hermitian_defect(a);
    const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
    if (defect > 1e-12 * std::max(1.0, scale))
        throw std::invalid_argument("matrix_function: input not Hermitian, max asymmetry " +
                                    std::to_string(defect));
    if (a.rows() == 0) return a;
    Eigen::SelfAdjointEigenSolver<CMat> solver(a);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("matrix_function: eigendecomposition did not converge");
    Eigen::VectorXd lambda = solver.eigenvalues();
    for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda(i) = f(lambda(i));
    return solver.eigenvectors() * lambda.asDiagonal() *
           solver.eigenvectors().adjoint();
}

}  // namespace rglt
