#pragma once
// ExperimentConfig: key=value files, command-line overrides and validation.
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace percrit::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Range {
    double min = 0, max = 0;
    int steps = 1;
    std::vector<double> values() const;
};

struct ExperimentConfig {
    std::string experiment;
    std::string out;  // empty: stdout
    int parallel = 1;
    std::uint64_t seed = 1;

    // compensator
    std::vector<double> x_values{2, 2.718281828459045, 10, 100, 1e6};
    std::vector<double> alpha_values{-1.9, -1.5, -1.1, -1, -0.9, -0.5, 0, 1, 2};

    // theorem_c
    int m = 0;
    std::vector<double> alpha_grid;  // empty: {-1.05, -1, -0.95} for m = 0, {-3} for m = 1
    double beta_shift = -2;          // second exponent of the calibrated pair, beta = alpha + shift
    double schedule_start = 10;
    double schedule_ratio = 3.1622776601683795;
    int schedule_points = 15;

    // scans
    Range q{-1.0 / 3 - 0.035, -1.0 / 3 + 0.035, 3};
    Range p{1.965, 2.035, 3};
    Range d{-1.5, -0.25, 6};
    double loud_f = 2;
    double lo_gap = 1e-1;
    double hi_gap = 1e-5;
    int resolution = 400;
    int expect_max_count = -1;  // < 0: no expectation

    // verify_identities
    int samples = 10;

    // named tolerances, overridable with tol.<name>=v or --tol name=v
    std::map<std::string, double> tol{
        {"identity", 1e-7}, {"formula", 1e-8}, {"final", 0.1}, {"momentum", 1e-8}, {"l_root", 1e-8}};

    void set(const std::string& key, const std::string& value);
    void validate() const;
};

// parse "key = value" lines; '#' starts a comment
void load_config_text(ExperimentConfig& c, const std::string& text);
void load_config_file(ExperimentConfig& c, const std::string& path);
// "name=value"
void apply_tol_override(ExperimentConfig& c, const std::string& spec);

double parse_double(const std::string& s);
std::vector<double> parse_list(const std::string& s);

}  // namespace percrit::cli
