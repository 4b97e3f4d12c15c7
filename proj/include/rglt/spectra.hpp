#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace rglt {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using RMat = Eigen::MatrixXd;

enum class SpectralKind { EigHermitian, Singular, EigGeneralRealPart, EigGeneralModulus };

struct SizeMeta {
    std::int64_t matrix_size = 0;
    std::int64_t reduced_size = 0;  // d_n^Omega when known, else matrix_size
    std::int64_t full_size = 0;     // N(n) when known, else matrix_size
};

/// Sorted (ascending) eigenvalue or singular-value multiset of one matrix.
struct SpectralSample {
    std::vector<double> values;
    SpectralKind kind = SpectralKind::EigHermitian;
    SizeMeta meta;
};

/// Largest |A - A^H| entry; 0 for Hermitian input.
double hermitian_defect(const CMat& a);

/// Eigenvalues of a Hermitian matrix, ascending. The input must be Hermitian
/// within 1e-12 (relative to the largest entry); violations throw with the
/// measured defect.
SpectralSample eigvals_hermitian(const CMat& a);

/// Complex eigenvalue multiset of a general square matrix.
std::vector<std::complex<double>> eigvals_general(const CMat& a);

/// Sorted real view of a general eigenvalue multiset (real parts or moduli,
/// the caller's choice) for distribution tests on nonsymmetric matrices.
SpectralSample spectral_sample_of(const std::vector<std::complex<double>>& eigenvalues,
                                  SpectralKind kind);

/// Singular values, ascending; defined for rectangular input.
SpectralSample singvals(const CMat& a);

/// sigma_max; 0 for an empty matrix.
double spectral_norm(const CMat& a);

/// Moore-Penrose pseudoinverse via SVD with cutoff 1e-12 * sigma_max.
CMat pseudoinverse(const CMat& a);

/// V f(Lambda) V^H from the spectral decomposition of a Hermitian matrix.
CMat matrix_function(const CMat& a, const std::function<double(double)>& f);

}  // namespace rglt
