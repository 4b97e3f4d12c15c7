#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rglt/runner.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw rglt::ConfigError("cannot open config file " + path);
    try {
        return nlohmann::json::parse(is);
    } catch (const std::exception& e) {
        throw rglt::ConfigError("config " + path + ": " + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduced GLT toolkit: grid masks, reduced assemblies, spectra and symbol checks"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    for (const char* name : {"counts", "spectrum", "compare", "acs"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "run configuration (JSON)")->required();
        sub->add_option("--out", out_dir, "output directory (overrides the config's outputs)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    try {
        const nlohmann::json raw = load_json(config_path);
        if (out_dir.empty()) out_dir = raw.value("outputs", "out");
        nlohmann::json summary;
        if (command == "acs") {
            if (!raw.contains("a") || !raw.contains("b"))
                throw rglt::ConfigError("acs: config must hold both sequences under \"a\" and \"b\"");
            summary = rglt::run_acs(rglt::parse_run_config(raw.at("a")),
                                    rglt::parse_run_config(raw.at("b")), out_dir);
        } else {
            const rglt::RunConfig config = rglt::parse_run_config(raw);
            if (command == "counts")
                summary = rglt::run_counts(config, out_dir);
            else if (command == "spectrum")
                summary = rglt::run_spectrum(config, out_dir);
            else
                summary = rglt::run_compare(config, out_dir);
        }
        std::cout << summary.dump(2) << std::endl;
        if (command == "compare" && !summary.value("trend_ok", false)) return rglt::kTrendFailure;
        return rglt::kOk;
    } catch (const rglt::ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return rglt::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return rglt::kNumericalFailure;
    }
}
