#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "rglt/reduction.hpp"

namespace rglt {

/// Plain-text triplets, 1-based: `row col value` per line (two value columns
/// re im when the matrix has an imaginary part).
void write_triplets(std::ostream& os, const SpMatC& matrix);
void write_triplets(std::ostream& os, const Eigen::SparseMatrix<double>& matrix);

/// The JSON sidecar stored next to a triplet export.
nlohmann::json triplet_sidecar(std::int64_t size, const std::string& domain_kind,
                               const GridSize& n, std::int64_t d_n_omega);

/// One value per line under a `value` header, 17 significant digits.
void write_values_csv(const std::filesystem::path& path, std::span<const double> values);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

std::string format_double(double v);  // %.17g

}  // namespace rglt
