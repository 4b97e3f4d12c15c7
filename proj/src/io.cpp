#include "rglt/io.hpp"

#include <cstdio>
#include <fstream>

namespace rglt {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_triplets(std::ostream& os, const SpMatC& matrix) {
    bool complex_valued = false;
    for (int k = 0; k < matrix.outerSize() && !complex_valued; ++k)
        for (SpMatC::InnerIterator it(matrix, k); it; ++it)
            if (it.value().imag() != 0.0) {
                complex_valued = true;
                break;
            }
    for (int k = 0; k < matrix.outerSize(); ++k)
        for (SpMatC::InnerIterator it(matrix, k); it; ++it) {
            os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_double(it.value().real());
            if (complex_valued) os << ' ' << format_double(it.value().imag());
            os << '\n';
        }
}

void write_triplets(std::ostream& os, const Eigen::SparseMatrix<double>& matrix) {
    for (int k = 0; k < matrix.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, k); it; ++it)
            os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_double(it.value()) << '\n';
}

nlohmann::json triplet_sidecar(std::int64_t size, const std::string& domain_kind,
                               const GridSize& n, std::int64_t d_n_omega) {
    return {{"size", size},
            {"domain", domain_kind},
            {"n", n.extents().components()},
            {"d_n_omega", d_n_omega}};
}

void write_values_csv(const std::filesystem::path& path, std::span<const double> values) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_values_csv: cannot open " + path.string());
    os << "value\n";
    for (double v : values) os << format_double(v) << '\n';
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_json: cannot open " + path.string());
    os << j.dump(2) << '\n';
}

}  // namespace rglt
