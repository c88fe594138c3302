#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace percrit::cli;

int main(int argc, char** argv) {
    CLI::App app{"percrit: period-function criticality experiments"};
    std::string experiment, positional, config_path, out;
    std::vector<std::string> tols;
    int parallel = 1;
    std::uint64_t seed = 1;
    app.add_option("--experiment", experiment,
                   "compensator | theorem_c | scan_power | scan_loud | verify_identities");
    app.add_option("command", positional, "experiment name (alternative to --experiment)");
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out, "CSV output path (default stdout)");
    app.add_option("--tol", tols, "tolerance override name=value (repeatable)");
    auto* par = app.add_option("--parallel", parallel, "worker threads for grid scans");
    auto* sd = app.add_option("--seed", seed, "seed for randomized suites");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    ExperimentConfig cfg;
    try {
        if (!config_path.empty()) load_config_file(cfg, config_path);
        if (!positional.empty() && !experiment.empty() && positional != experiment)
            throw ConfigError("conflicting experiment names");
        if (!positional.empty()) cfg.experiment = positional;
        if (!experiment.empty()) cfg.experiment = experiment;
        if (!out.empty()) cfg.out = out;
        if (par->count()) cfg.parallel = parallel;
        if (sd->count()) cfg.seed = seed;
        for (const auto& t : tols) apply_tol_override(cfg, t);
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.out.empty()) {
        std::filesystem::path p(cfg.out);
        if (const char* dir = std::getenv("PERCRIT_OUT_DIR"); dir && p.is_relative()) p = std::filesystem::path(dir) / p;
        file.open(p, std::ios::binary);
        if (!file) {
            std::cerr << "config error: cannot write " << p << '\n';
            return kConfigError;
        }
        os = &file;
    }
    try {
        return run_experiment(cfg, *os, std::cerr);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}
