#include "rglt/reduction.hpp"

#include <stdexcept>

#include "rglt/symbols.hpp"

namespace rglt {

Projector::Projector(GridMask mask) : mask_(std::move(mask)) {
    kept_.reserve(static_cast<std::size_t>(mask_.count));
    for (std::int64_t k = 0; k < mask_.n.count(); ++k)
        if (mask_.bits[static_cast<std::size_t>(k)]) kept_.push_back(k);
    if (static_cast<std::int64_t>(kept_.size()) != mask_.count)
        throw std::invalid_argument("Projector: mask count does not match its set bits");
}

namespace {

void check_full(const Projector& p, Eigen::Index rows, Eigen::Index cols, const char* op) {
    if (rows != p.full_size() || cols != p.full_size())
        throw std::invalid_argument(std::string(op) + ": expected a " +
                                    std::to_string(p.full_size()) + " x " +
                                    std::to_string(p.full_size()) + " matrix");
}

void check_reduced(const Projector& p, Eigen::Index rows, Eigen::Index cols, const char* op) {
    if (rows != p.reduced_size() || cols != p.reduced_size())
        throw std::invalid_argument(std::string(op) + ": expected a " +
                                    std::to_string(p.reduced_size()) + " x " +
                                    std::to_string(p.reduced_size()) + " matrix");
}

}  // namespace

CMat zero_out(const Projector& p, const CMat& a) {
    check_full(p, a.rows(), a.cols(), "zero_out");
    CMat out = CMat::Zero(a.rows(), a.cols());
    for (std::int64_t r : p.kept())
        for (std::int64_t c : p.kept()) out(r, c) = a(r, c);
    return out;
}

CMat restricted(const Projector& p, const CMat& a) {
    check_full(p, a.rows(), a.cols(), "restricted");
    const auto kept = p.kept();
    CMat out(p.reduced_size(), p.reduced_size());
    for (std::int64_t i = 0; i < p.reduced_size(); ++i)
        for (std::int64_t j = 0; j < p.reduced_size(); ++j)
            out(i, j) = a(kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]);
    return out;
}

CMat expanded(const Projector& p, const CMat& s) {
    check_reduced(p, s.rows(), s.cols(), "expanded");
    const auto kept = p.kept();
    CMat out = CMat::Zero(p.full_size(), p.full_size());
    for (std::int64_t i = 0; i < p.reduced_size(); ++i)
        for (std::int64_t j = 0; j < p.reduced_size(); ++j)
            out(kept[static_cast<std::size_t>(i)], kept[static_cast<std::size_t>(j)]) = s(i, j);
    return out;
}

namespace {

std::vector<std::int64_t> inverse_map(const Projector& p) {
    std::vector<std::int64_t> inv(static_cast<std::size_t>(p.full_size()), -1);
    const auto kept = p.kept();
    for (std::int64_t i = 0; i < p.reduced_size(); ++i)
        inv[static_cast<std::size_t>(kept[static_cast<std::size_t>(i)])] = i;
    return inv;
}

}  // namespace

SpMatC zero_out(const Projector& p, const SpMatC& a) {
    check_full(p, a.rows(), a.cols(), "zero_out");
    const auto inv = inverse_map(p);
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(a.nonZeros()));
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMatC::InnerIterator it(a, k); it; ++it)
            if (inv[static_cast<std::size_t>(it.row())] >= 0 &&
                inv[static_cast<std::size_t>(it.col())] >= 0)
                trips.emplace_back(it.row(), it.col(), it.value());
    SpMatC out(a.rows(), a.cols());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SpMatC restricted(const Projector& p, const SpMatC& a) {
    check_full(p, a.rows(), a.cols(), "restricted");
    const auto inv = inverse_map(p);
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMatC::InnerIterator it(a, k); it; ++it) {
            const std::int64_t r = inv[static_cast<std::size_t>(it.row())];
            const std::int64_t c = inv[static_cast<std::size_t>(it.col())];
            if (r >= 0 && c >= 0)
                trips.emplace_back(static_cast<int>(r), static_cast<int>(c), it.value());
        }
    SpMatC out(p.reduced_size(), p.reduced_size());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

SpMatC expanded(const Projector& p, const SpMatC& s) {
    check_reduced(p, s.rows(), s.cols(), "expanded");
    const auto kept = p.kept();
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int k = 0; k < s.outerSize(); ++k)
        for (SpMatC::InnerIterator it(s, k); it; ++it)
            trips.emplace_back(static_cast<int>(kept[static_cast<std::size_t>(it.row())]),
                               static_cast<int>(kept[static_cast<std::size_t>(it.col())]),
                               it.value());
    SpMatC out(p.full_size(), p.full_size());
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

GramReport projector_gram_checks(const Projector& p) {
    // Pi^T Pi is diagonal with ones exactly at kept positions; Pi Pi^T is the
    // reduced identity. Both follow from the kept list being strictly
    // increasing and duplicate-free against the mask bits.
    const auto kept = p.kept();
    for (std::size_t i = 1; i < kept.size(); ++i)
        if (kept[i] <= kept[i - 1])
            return {false, "kept list not strictly increasing at position " + std::to_string(i)};
    std::int64_t cursor = 0;
    for (std::int64_t k = 0; k < p.full_size(); ++k) {
        const bool bit = p.grid_mask().bits[static_cast<std::size_t>(k)] != 0;
        const bool in_kept =
            cursor < p.reduced_size() && kept[static_cast<std::size_t>(cursor)] == k;
        if (in_kept) ++cursor;
        if (bit != in_kept)
            return {false, "PiT*Pi diagonal mismatch at flat index " + std::to_string(k + 1)};
    }
    if (cursor != p.reduced_size())
        return {false, "Pi*PiT trailing rows beyond the mask count"};
    return {true, ""};
}

nlohmann::json GridPairReport::to_json() const {
    nlohmann::json js = nlohmann::json::array();
    for (const auto& level : levels)
        js.push_back({{"n", level.n.extents().components()},
                      {"symmetric_difference", level.symmetric_difference},
                      {"symmetric_difference_ratio", level.symmetric_difference_ratio},
                      {"wasserstein1", level.wasserstein1},
                      {"sizes", {level.size_a, level.size_b}}});
    return {{"levels", js}, {"distances_vanish", distances_vanish}};
}

GridPairReport restricted_grid_equivalence(const std::function<CMat(const GridSize&)>& builder,
                                           const Domain& dom1,
                                           const std::function<GridMask(const GridSize&)>& dom2,
                                           const std::vector<GridSize>& sweep) {
    GridPairReport report;
    for (const GridSize& n : sweep) {
        const CMat a = builder(n);
        const GridMask m1 = mask(dom1, n, true);
        const GridMask m2 = dom2(n);
        if (m2.n.count() != n.count())
            throw std::invalid_argument("restricted_grid_equivalence: mask size mismatch");
        GridPairLevel level;
        level.n = n;
        for (std::int64_t k = 0; k < n.count(); ++k)
            if (m1.bits[static_cast<std::size_t>(k)] != m2.bits[static_cast<std::size_t>(k)])
                ++level.symmetric_difference;
        level.symmetric_difference_ratio =
            static_cast<double>(level.symmetric_difference) / static_cast<double>(n.count());

        const CMat r1 = restricted(Projector(m1), a);
        const CMat r2 = restricted(Projector(m2), a);
        level.size_a = r1.rows();
        level.size_b = r2.rows();
        const double tol = 1e-12 * std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
        std::vector<double> s1, s2;
        if (hermitian_defect(r1) <= tol && hermitian_defect(r2) <= tol) {
            s1 = eigvals_hermitian(r1).values;
            s2 = eigvals_hermitian(r2).values;
        } else {
            s1 = singvals(r1).values;
            s2 = singvals(r2).values;
        }
        if (s1.empty() || s2.empty()) {
            level.wasserstein1 = 0.0;
        } else {
            level.wasserstein1 = compare_distributions(s1, s2).wasserstein1;
        }
        report.levels.push_back(level);
    }
    report.distances_vanish = true;
    for (std::size_t i = 1; i < report.levels.size(); ++i)
        if (report.levels[i].wasserstein1 > 1.10 * report.levels[i - 1].wasserstein1)
            report.distances_vanish = false;
    return report;
}

}  // namespace rglt
