#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace percrit::cli {

enum ExitCode { kOk = 0, kRuntimeError = 1, kAcceptanceFailure = 2, kConfigError = 3 };

// RFC-4180: quote when the field holds a comma, quote, CR or LF; double embedded quotes
std::string csv_field(const std::string& s);
// shortest round-trip representation, '.' decimal separator regardless of locale
std::string csv_number(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& os_;
};

// CSV to `out`, human-readable summary to `log`; returns an ExitCode
int cmd_compensator(const ExperimentConfig& c, std::ostream& out, std::ostream& log);
int cmd_theorem_c(const ExperimentConfig& c, std::ostream& out, std::ostream& log);
int cmd_scan_power(const ExperimentConfig& c, std::ostream& out, std::ostream& log);
int cmd_scan_loud(const ExperimentConfig& c, std::ostream& out, std::ostream& log);
int cmd_verify_identities(const ExperimentConfig& c, std::ostream& out, std::ostream& log);

int run_experiment(const ExperimentConfig& c, std::ostream& out, std::ostream& log);

}  // namespace percrit::cli
