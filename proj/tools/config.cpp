#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace percrit::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& s) {
    const std::string t = trim(s);
    long long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty()) throw ConfigError("not an integer: '" + s + "'");
    return v;
}

}  // namespace

double parse_double(const std::string& s) {
    const std::string t = trim(s);
    double v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size() || t.empty()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_double(item));
    if (v.empty()) throw ConfigError("empty list");
    return v;
}

std::vector<double> Range::values() const {
    if (steps == 1) return {min};
    std::vector<double> v(steps);
    for (int i = 0; i < steps; ++i) v[i] = min + (max - min) * i / (steps - 1);
    return v;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    using Setter = std::function<void(const std::string&)>;
    auto real = [](double& dst) -> Setter { return [&dst](const std::string& v) { dst = parse_double(v); }; };
    auto integer = [](int& dst) -> Setter { return [&dst](const std::string& v) { dst = int(parse_int(v)); }; };
    auto list = [](std::vector<double>& dst) -> Setter { return [&dst](const std::string& v) { dst = parse_list(v); }; };
    const std::map<std::string, Setter> table{
        {"experiment", [this](const std::string& v) { experiment = trim(v); }},
        {"out", [this](const std::string& v) { out = trim(v); }},
        {"parallel", integer(parallel)},
        {"seed", [this](const std::string& v) {
             long long s = parse_int(v);
             if (s < 0) throw ConfigError("seed must be nonnegative");
             seed = std::uint64_t(s);
         }},
        {"x_values", list(x_values)},
        {"alpha_values", list(alpha_values)},
        {"m", integer(m)},
        {"alpha_grid", list(alpha_grid)},
        {"beta_shift", real(beta_shift)},
        {"schedule_start", real(schedule_start)},
        {"schedule_ratio", real(schedule_ratio)},
        {"schedule_points", integer(schedule_points)},
        {"q_min", real(q.min)},
        {"q_max", real(q.max)},
        {"q_steps", integer(q.steps)},
        {"p_min", real(p.min)},
        {"p_max", real(p.max)},
        {"p_steps", integer(p.steps)},
        {"d_min", real(d.min)},
        {"d_max", real(d.max)},
        {"d_steps", integer(d.steps)},
        {"loud_f", real(loud_f)},
        {"lo_gap", real(lo_gap)},
        {"hi_gap", real(hi_gap)},
        {"resolution", integer(resolution)},
        {"expect_max_count", integer(expect_max_count)},
        {"samples", integer(samples)},
    };
    const std::string k = trim(key);
    if (k.rfind("tol.", 0) == 0) {
        const std::string name = k.substr(4);
        if (!tol.count(name)) throw ConfigError("unknown tolerance '" + name + "'");
        tol[name] = parse_double(value);
        return;
    }
    auto it = table.find(k);
    if (it == table.end()) throw ConfigError("unknown key '" + k + "'");
    it->second(value);
}

void ExperimentConfig::validate() const {
    static const char* known[] = {"compensator", "theorem_c", "scan_power", "scan_loud", "verify_identities"};
    bool ok = false;
    for (const char* e : known) ok = ok || experiment == e;
    if (!ok) throw ConfigError("unknown experiment '" + experiment + "'");
    if (parallel < 1) throw ConfigError("parallel must be >= 1");
    if (m < 0 || m > 1) throw ConfigError("theorem_c supports m = 0 and m = 1");
    if (!(schedule_start > 0) || !(schedule_ratio > 1) || schedule_points < 3)
        throw ConfigError("schedule needs start > 0, ratio > 1, points >= 3");
    for (const Range* r : {&q, &p, &d})
        if (r->steps < 1 || !(r->min <= r->max)) throw ConfigError("ranges need steps >= 1 and min <= max");
    if (!(0 < hi_gap && hi_gap < lo_gap && lo_gap < 1)) throw ConfigError("window needs 0 < hi_gap < lo_gap < 1");
    if (resolution < 2) throw ConfigError("resolution must be >= 2");
    if (samples < 1) throw ConfigError("samples must be >= 1");
    for (double x : x_values)
        if (!(x > 0)) throw ConfigError("x_values must be positive");
    for (const auto& [name, v] : tol)
        if (!(v > 0) || !std::isfinite(v)) throw ConfigError("tolerance '" + name + "' must be positive");
}

void load_config_text(ExperimentConfig& c, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(no) + ": expected key=value");
        try {
            c.set(line.substr(0, eq), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(no) + ": " + e.what());
        }
    }
}

void load_config_file(ExperimentConfig& c, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    load_config_text(c, ss.str());
}

void apply_tol_override(ExperimentConfig& c, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw ConfigError("--tol expects name=value");
    c.set("tol." + trim(spec.substr(0, eq)), spec.substr(eq + 1));
}

}  // namespace percrit::cli
