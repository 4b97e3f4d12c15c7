#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>
#include <json.hpp>

#include "rglt/domain.hpp"
#include "rglt/spectra.hpp"

namespace rglt {

using SpMatC = Eigen::SparseMatrix<Complex>;

/// The row-selection map Pi_{n,Omega}: the strictly increasing list of flat
/// grid positions kept by a mask (the enumeration of nonzero rows of
/// I_n(chi_Omega)). Never materialized as a dense matrix; restriction and
/// expansion are gather/scatter on the kept list.
class Projector {
public:
    explicit Projector(GridMask mask);

    const GridMask& grid_mask() const { return mask_; }
    const GridSize& grid() const { return mask_.n; }
    std::int64_t full_size() const { return mask_.n.count(); }
    std::int64_t reduced_size() const { return static_cast<std::int64_t>(kept_.size()); }
    /// 0-based flat positions, strictly increasing.
    std::span<const std::int64_t> kept() const { return kept_; }

private:
    GridMask mask_;
    std::vector<std::int64_t> kept_;
};

/// Z_Omega: rows and columns at non-kept indices zeroed, others unchanged.
CMat zero_out(const Projector& p, const CMat& a);
SpMatC zero_out(const Projector& p, const SpMatC& a);

/// R_Omega: the principal submatrix at kept indices, order preserved.
CMat restricted(const Projector& p, const CMat& a);
SpMatC restricted(const Projector& p, const SpMatC& a);

/// E_Omega: scatter a reduced matrix back to full size with zero rows and
/// columns elsewhere; restricted(expanded(S)) == S exactly.
CMat expanded(const Projector& p, const CMat& s);
SpMatC expanded(const Projector& p, const SpMatC& s);

struct GramReport {
    bool pass = false;
    std::string detail;  // first failing entry when not passing
};

/// Verifies Pi^T Pi = I_n(chi_Omega) and Pi Pi^T = I_d exactly in 0/1
/// arithmetic, directly from the kept list.
GramReport projector_gram_checks(const Projector& p);

struct GridPairLevel {
    GridSize n;
    std::int64_t symmetric_difference = 0;
    double symmetric_difference_ratio = 0.0;
    double wasserstein1 = 0.0;
    std::int64_t size_a = 0, size_b = 0;
};

struct GridPairReport {
    std::vector<GridPairLevel> levels;
    bool distances_vanish = false;  // non-increasing with 10% slack

    nlohmann::json to_json() const;
};

/// Compares the spectra of restrictions by two mask families whose symmetric
/// difference is o(N). Hermitian inputs compare eigenvalues, anything else
/// singular values.
GridPairReport restricted_grid_equivalence(const std::function<CMat(const GridSize&)>& builder,
                                           const Domain& dom1,
                                           const std::function<GridMask(const GridSize&)>& dom2,
                                           const std::vector<GridSize>& sweep);

}  // namespace rglt
