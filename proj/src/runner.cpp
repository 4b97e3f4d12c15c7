#include "rglt/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "parallel.hpp"
#include "rglt/io.hpp"

namespace rglt {

int sweep_thread_cap() { return internal::thread_cap(); }

namespace {

using internal::parallel_sweep;

std::string n_label(const GridSize& n) {
    std::string out;
    for (int r = 0; r < n.dim(); ++r)
        out += (r ? "x" : "") + std::to_string(n.extent(r));
    return out;
}

}  // namespace

nlohmann::json run_counts(const RunConfig& config, const std::filesystem::path& outdir) {
    const auto dir = outdir / "counts";
    std::filesystem::create_directories(dir);

    struct Row {
        GridSize n;
        std::int64_t total = 0, d_omega = 0, band = 0, near2 = 0;
    };
    std::vector<Row> rows(config.sweep.size());
    parallel_sweep(config.sweep.size(), [&](std::size_t i) {
        const GridSize& n = config.sweep[i];
        Row row{n};
        row.total = n.count();
        row.d_omega = mask(config.domain, n, config.options.closure).count;
        row.band = boundary_band_count(config.domain, n, 2.0 * n.max_step());
        row.near2 = static_cast<std::int64_t>(near_boundary_points(config.domain, n, 2).size());
        rows[i] = std::move(row);
    });

    std::ofstream csv(dir / "counts.csv");
    csv << "n,N,d_omega,ratio,band_count_2h,near_boundary_k2\n";
    nlohmann::json levels = nlohmann::json::array();
    for (const Row& row : rows) {
        const double ratio = static_cast<double>(row.d_omega) / static_cast<double>(row.total);
        csv << n_label(row.n) << ',' << row.total << ',' << row.d_omega << ','
            << format_double(ratio) << ',' << row.band << ',' << row.near2 << '\n';
        levels.push_back({{"n", row.n.extents().components()},
                          {"N", row.total},
                          {"d_omega", row.d_omega},
                          {"ratio", ratio},
                          {"band_count_2h", row.band},
                          {"near_boundary_k2", row.near2}});
    }
    nlohmann::json summary{{"command", "counts"}, {"levels", levels}};
    if (auto m = config.domain.analytic_measure()) summary["analytic_measure"] = *m;
    write_json(dir / "summary.json", summary);
    return summary;
}

nlohmann::json run_spectrum(const RunConfig& config, const std::filesystem::path& outdir) {
    const auto dir = outdir / "spectrum";
    std::filesystem::create_directories(dir);
    const MethodInstance method = instantiate_method(config);

    struct Level {
        std::vector<double> values;
        double skew_ratio = 0.0;
        std::int64_t size = 0;
    };
    std::vector<Level> computed(config.sweep.size());
    parallel_sweep(config.sweep.size(), [&](std::size_t i) {
        try {
            const CMat a = method.build(config.sweep[i]);
            Level level;
            level.size = a.rows();
            if (config.options.mode == "sigma") {
                level.values = singvals(a).values;
            } else if (config.options.hermitian_part) {
                const CMat herm = 0.5 * (a + a.adjoint());
                level.skew_ratio =
                    (a - herm).norm() /
                    std::sqrt(static_cast<double>(std::max<Eigen::Index>(1, a.rows())));
                level.values = eigvals_hermitian(herm).values;
            } else {
                level.values = eigvals_hermitian(a).values;
            }
            computed[i] = std::move(level);
        } catch (const std::exception& e) {
            throw std::runtime_error("spectrum at n = " + config.sweep[i].extents().to_string() +
                                     ": " + e.what());
        }
    });

    // file writes happen after the sweep, in n-order
    std::vector<nlohmann::json> levels;
    for (std::size_t i = 0; i < config.sweep.size(); ++i) {
        const GridSize& n = config.sweep[i];
        const auto level_dir = dir / n_label(n);
        std::filesystem::create_directories(level_dir);
        write_values_csv(level_dir / "values.csv", computed[i].values);
        nlohmann::json meta{{"n", n.extents().components()},
                            {"size", computed[i].size},
                            {"kind", config.options.mode == "sigma" ? "singular" : "eig-hermitian"},
                            {"skew_ratio", computed[i].skew_ratio},
                            {"scaled", config.method == "shortley-weller"}};
        write_json(level_dir / "meta.json", meta);
        levels.push_back(std::move(meta));
    }

    nlohmann::json summary{{"command", "spectrum"},
                           {"method", config.method},
                           {"levels", levels}};
    write_json(dir / "summary.json", summary);
    return summary;
}

nlohmann::json run_compare(const RunConfig& config, const std::filesystem::path& outdir) {
    const auto dir = outdir / "compare";
    std::filesystem::create_directories(dir);
    const MethodInstance method = instantiate_method(config);

    ConvergenceReport report;
    if (config.options.mode == "sigma")
        report = verify_sigma(method.build, method.symbol, config.sweep, method.reduced_size,
                              config.options.symbol_samples);
    else
        report = verify_lambda(method.build, method.symbol, config.sweep,
                               config.options.hermitian_part, config.options.symbol_samples);

    for (const auto& level : report.levels) {
        const auto level_dir = dir / n_label(level.n);
        std::filesystem::create_directories(level_dir);
        write_json(level_dir / "report.json",
                   {{"n", level.n.extents().components()},
                    {"size", level.size},
                    {"skew_ratio", level.skew_ratio},
                    {"report", level.report.to_json()}});
    }
    nlohmann::json summary = report.to_json();
    summary["command"] = "compare";
    summary["method"] = config.method;
    write_json(dir / "summary.json", summary);
    return summary;
}

nlohmann::json run_acs(const RunConfig& config_a, const RunConfig& config_b,
                       const std::filesystem::path& outdir) {
    const auto dir = outdir / "acs";
    std::filesystem::create_directories(dir);
    const MethodInstance a = instantiate_method(config_a);
    const MethodInstance b = instantiate_method(config_b);

    const DacsReport dacs = dacs_estimate(a.build, b.build, config_a.sweep);

    // pmea of the sampled symbol difference over the shared x/theta grid
    const SeparableSymbol difference = SeparableSymbol::generic(
        a.symbol.dim(), a.symbol.domain(),
        [sa = a.symbol, sb = b.symbol](std::span<const double> x, std::span<const double> theta) {
            return sa.eval(x, theta) - sb.eval(x, theta);
        });
    const int m = std::max(
        2, static_cast<int>(std::ceil(std::pow(1e5, 1.0 / (2.0 * a.symbol.dim())))));
    const std::vector<Complex> samples = sample_symbol_complex(difference, m, m);
    const double pmea_diff = pmea(std::span<const Complex>(samples));

    nlohmann::json summary = dacs.to_json();
    summary["command"] = "acs";
    summary["pmea_of_symbol_difference"] = pmea_diff;
    write_json(dir / "summary.json", summary);
    return summary;
}

}  // namespace rglt
