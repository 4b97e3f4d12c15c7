#include <doctest.h>

#include <stdexcept>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rglt/io.hpp"
#include "rglt/runner.hpp"

using namespace rglt;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rglt_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

nlohmann::json read_json(const fs::path& p) {
    std::ifstream is(p);
    REQUIRE(is.good());
    return nlohmann::json::parse(is);
}

int run_cli(const std::string& args) {
    const char* cli = std::getenv("RGLT_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "RGLT_CLI must point at the built binary");
    const std::string cmd = std::string(cli) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

const char* kToeplitzConfig = R"({
  "method": "toeplitz",
  "coefficients": {"stencil": {"0": 2, "1": -1, "-1": -1}},
  "sweep": [5, 9]
})";

}  // namespace

TEST_SUITE("config_io_cli") {

TEST_CASE("domain and config parsing") {
    CHECK(parse_domain({{"kind", "disk"}, {"center", {0.5, 0.5}}, {"radius", 0.4}}).kind() ==
          "disk");
    CHECK(parse_domain({{"kind", "hypercube"}, {"dimension", 3}}).dim() == 3);
    CHECK(parse_domain({{"kind", "l_shape"}}).analytic_measure().value() == doctest::Approx(0.75));
    const Domain implicit = parse_domain(
        {{"kind", "implicit"}, {"dimension", 2}, {"predicate", "x1 + x2 < 1"}});
    CHECK(implicit.membership(std::vector<double>{0.2, 0.2}) == Region::Inside);
    CHECK_THROWS_AS(parse_domain({{"kind", "banana"}}), ConfigError);
    CHECK_THROWS_AS(parse_domain({{"kind", "implicit"}, {"dimension", 1}, {"predicate", "x3 < 1"}}),
                    ConfigError);

    const RunConfig config = parse_run_config(nlohmann::json::parse(kToeplitzConfig));
    CHECK(config.method == "toeplitz");
    CHECK(config.domain.dim() == 1);
    CHECK(config.sweep.size() == 2);

    nlohmann::json bad = nlohmann::json::parse(kToeplitzConfig);
    bad["sweep"] = {9, 5};
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);
    bad["sweep"] = nlohmann::json::array();
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);
    bad = nlohmann::json::parse(kToeplitzConfig);
    bad["method"] = "unknown";
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);

    // anisotropic sweep entries, increasing in min(n)
    nlohmann::json aniso = nlohmann::json::parse(kToeplitzConfig);
    aniso["domain"] = {{"kind", "hypercube"}, {"dimension", 2}};
    aniso["coefficients"]["stencil"] = {{"0,0", 2}, {"1,0", -1}, {"-1,0", -1}};
    aniso["sweep"] = {{3, 4}, {6, 8}};
    const RunConfig parsed = parse_run_config(aniso);
    CHECK(parsed.sweep[0].extents() == MultiIndex{3, 4});
    CHECK(parsed.sweep[1].count() == 48);
}

TEST_CASE("triplet export format") {
    SpMatC m(2, 2);
    m.insert(0, 0) = Complex(1.5, 0.0);
    m.insert(1, 0) = Complex(-2.0, 0.0);
    m.makeCompressed();
    std::ostringstream os;
    write_triplets(os, m);
    CHECK(os.str() == "1 1 1.5\n2 1 -2\n");

    SpMatC c(1, 1);
    c.insert(0, 0) = Complex(1.0, -0.5);
    std::ostringstream osc;
    write_triplets(osc, c);
    CHECK(osc.str() == "1 1 1 -0.5\n");

    const nlohmann::json side = triplet_sidecar(4, "disk", GridSize{2, 2}, 3);
    CHECK(side.at("size") == 4);
    CHECK(side.at("d_n_omega") == 3);
}

TEST_CASE("counts run writes the documented table") {
    const fs::path out = fresh_dir("counts");
    RunConfig config;
    config.method = "shortley-weller";
    config.domain = Domain::disk({0.5, 0.5}, 0.5);
    config.sweep = {GridSize{15, 15}, GridSize{31, 31}};
    const nlohmann::json summary = run_counts(config, out);

    CHECK(fs::exists(out / "counts" / "counts.csv"));
    CHECK(fs::exists(out / "counts" / "summary.json"));
    std::ifstream csv(out / "counts" / "counts.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,N,d_omega,ratio,band_count_2h,near_boundary_k2");
    CHECK(summary.at("levels").size() == 2);
    const double r0 = summary.at("levels").at(0).at("ratio").get<double>();
    const double r1 = summary.at("levels").at(1).at("ratio").get<double>();
    CHECK(std::abs(r1 - 0.7853981633974483) < std::abs(r0 - 0.7853981633974483));
    // the near-boundary density column falls under refinement
    const auto& levels = summary.at("levels");
    const double near0 = levels.at(0).at("near_boundary_k2").get<double>() /
                         levels.at(0).at("N").get<double>();
    const double near1 = levels.at(1).at("near_boundary_k2").get<double>() /
                         levels.at(1).at("N").get<double>();
    CHECK(near1 < near0);

    // full square: all ratios exactly 1
    RunConfig square = config;
    square.domain = Domain::hypercube(2);
    const nlohmann::json square_summary = run_counts(square, fresh_dir("counts_square"));
    for (const auto& level : square_summary.at("levels"))
        CHECK(level.at("ratio").get<double>() == 1.0);
}

TEST_CASE("spectrum run matches the closed form") {
    const fs::path out = fresh_dir("spectrum");
    RunConfig config = parse_run_config(nlohmann::json::parse(kToeplitzConfig));
    config.sweep = {GridSize{5}};
    run_spectrum(config, out);

    std::ifstream values(out / "spectrum" / "5" / "values.csv");
    REQUIRE(values.good());
    std::string line;
    std::getline(values, line);
    CHECK(line == "value");
    std::vector<double> spectrum;
    while (std::getline(values, line)) spectrum.push_back(std::stod(line));
    REQUIRE(spectrum.size() == 5);
    for (int j = 1; j <= 5; ++j)
        CHECK(spectrum[static_cast<std::size_t>(j - 1)] ==
              doctest::Approx(2 - 2 * std::cos(j * std::numbers::pi / 6.0)).epsilon(1e-10));
}

TEST_CASE("shortley-weller spectrum matches the separable closed form") {
    // on the unit square at n = 3 the scaled eigenvalues are
    // (16/9) (4 - 2cos(j pi/4) - 2cos(k pi/4)), j,k = 1..3
    const fs::path out = fresh_dir("sw_square");
    RunConfig config;
    config.method = "shortley-weller";
    config.domain = Domain::hypercube(2);
    config.sweep = {GridSize{3, 3}};
    run_spectrum(config, out);

    std::ifstream values(out / "spectrum" / "3x3" / "values.csv");
    std::string line;
    std::getline(values, line);
    std::vector<double> spectrum;
    while (std::getline(values, line)) spectrum.push_back(std::stod(line));
    REQUIRE(spectrum.size() == 9);

    std::vector<double> expected;
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k)
            expected.push_back(16.0 / 9.0 *
                               (4 - 2 * std::cos(j * std::numbers::pi / 4) -
                                2 * std::cos(k * std::numbers::pi / 4)));
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < 9; ++i)
        CHECK(spectrum[i] == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("compare on the disk trends downward through the runner") {
    const fs::path out = fresh_dir("sw_disk_compare");
    RunConfig config;
    config.method = "shortley-weller";
    config.domain = Domain::disk({0.5, 0.5}, 0.4);
    config.coefficients = {{"a", {"1", "1"}}};
    config.sweep = {GridSize{7, 7}, GridSize{15, 15}};
    const nlohmann::json summary = run_compare(config, out);
    CHECK(summary.at("trend_ok").get<bool>());
    CHECK(fs::exists(out / "compare" / "15x15" / "report.json"));
}

TEST_CASE("outputs are bit-stable across runs") {
    RunConfig config = parse_run_config(nlohmann::json::parse(kToeplitzConfig));
    config.sweep = {GridSize{7}};
    const fs::path out1 = fresh_dir("stable1"), out2 = fresh_dir("stable2");
    run_spectrum(config, out1);
    run_spectrum(config, out2);
    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    CHECK(slurp(out1 / "spectrum" / "7" / "values.csv") ==
          slurp(out2 / "spectrum" / "7" / "values.csv"));
}

TEST_CASE("acs run reports both sides of the isometry") {
    const fs::path out = fresh_dir("acs");
    const nlohmann::json a = {
        {"method", "glt-expr"},
        {"coefficients", {{"expr", {{"op", "diag"}, {"dimension", 1}, {"a", "x1"}}}}},
        {"sweep", {128, 256}}};
    nlohmann::json b = a;
    b["coefficients"]["expr"]["a"] = "x1/2";
    const nlohmann::json summary =
        run_acs(parse_run_config(a), parse_run_config(b), out);
    // D(x) vs D(x/2): dacs = 1/2 = pmea(x/2)
    CHECK(summary.at("dacs_estimate").get<double>() == doctest::Approx(0.5).epsilon(0.01));
    CHECK(summary.at("pmea_of_symbol_difference").get<double>() ==
          doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("summaries are independent of the thread cap") {
    const fs::path dir = fresh_dir("threads");
    const fs::path config_path = dir / "toeplitz.json";
    {
        std::ofstream os(config_path);
        os << kToeplitzConfig;
    }
    const char* cli = std::getenv("RGLT_CLI");
    REQUIRE(cli != nullptr);
    for (int threads : {1, 3}) {
        const std::string cmd = "RGLT_THREADS=" + std::to_string(threads) + " " + cli +
                                " compare --config " + config_path.string() + " --out " +
                                (dir / ("t" + std::to_string(threads))).string() +
                                " > /dev/null 2>&1";
        REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    }
    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    CHECK(slurp(dir / "t1" / "compare" / "summary.json") ==
          slurp(dir / "t3" / "compare" / "summary.json"));
}

TEST_CASE("cli end to end") {
    const fs::path dir = fresh_dir("cli");
    const fs::path config_path = dir / "toeplitz.json";
    {
        std::ofstream os(config_path);
        os << kToeplitzConfig;
    }
    CHECK(run_cli("counts --config " + config_path.string() + " --out " + (dir / "o1").string()) ==
          0);
    CHECK(run_cli("spectrum --config " + config_path.string() + " --out " +
                  (dir / "o2").string()) == 0);
    CHECK(fs::exists(dir / "o2" / "spectrum" / "summary.json"));
    CHECK(run_cli("compare --config " + config_path.string() + " --out " +
                  (dir / "o3").string()) == 0);
    CHECK(read_json(dir / "o3" / "compare" / "summary.json").at("trend_ok").get<bool>());

    // exit code 2 on malformed configs
    const fs::path bad_path = dir / "bad.json";
    {
        std::ofstream os(bad_path);
        os << R"({"method": "toeplitz", "sweep": []})";
    }
    CHECK(run_cli("counts --config " + bad_path.string() + " --out " + (dir / "o4").string()) == 2);
    CHECK(run_cli("counts --config " + (dir / "missing.json").string() + " --out " +
                  (dir / "o5").string()) == 2);

    // acs through the CLI with the two-sequence config layout
    const fs::path acs_path = dir / "acs.json";
    {
        std::ofstream os(acs_path);
        os << R"({
          "a": {"method": "glt-expr",
                 "coefficients": {"expr": {"op": "diag", "dimension": 1, "a": "x1"}},
                 "sweep": [64, 128]},
          "b": {"method": "glt-expr",
                 "coefficients": {"expr": {"op": "zero", "dimension": 1}},
                 "sweep": [64, 128]}
        })";
    }
    CHECK(run_cli("acs --config " + acs_path.string() + " --out " + (dir / "o6").string()) == 0);
    const nlohmann::json acs = read_json(dir / "o6" / "acs" / "summary.json");
    CHECK(acs.at("dacs_estimate").get<double>() == doctest::Approx(1.0));
    CHECK(acs.at("pmea_of_symbol_difference").get<double>() == doctest::Approx(1.0).epsilon(0.02));
}

}  // TEST_SUITE
