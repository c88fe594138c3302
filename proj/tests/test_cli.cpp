#include <clocale>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"

using namespace percrit::cli;

namespace {

// minimal RFC-4180 reader for checking our own output
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = any = true;
        } else if (c == ',') {
            row.push_back(field);
            field.clear();
        } else if (c == '\r') {
        } else if (c == '\n') {
            row.push_back(field);
            rows.push_back(row);
            row.clear();
            field.clear();
        } else {
            field += c;
        }
    }
    if (!field.empty() || !row.empty()) {
        row.push_back(field);
        rows.push_back(row);
    }
    return rows;
}

int column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return int(i);
    return -1;
}

struct Run {
    int code;
    std::vector<std::vector<std::string>> rows;
    std::string log;
};

Run run(const std::string& cfg_text) {
    ExperimentConfig c;
    load_config_text(c, cfg_text);
    std::ostringstream out, log;
    const int code = run_experiment(c, out, log);
    return {code, read_csv(out.str()), log.str()};
}

}  // namespace

TEST_CASE("config parsing: comments, lists, ranges, tolerances") {
    ExperimentConfig c;
    load_config_text(c,
                     "# a comment\n"
                     "experiment = scan_loud   # trailing comment\n"
                     "\n"
                     "x_values = 2, 3.5 ,1e6\n"
                     "d_min = -1.2\nd_max = -0.8\nd_steps = 3\n"
                     "tol.identity = 1e-9\n"
                     "seed = 42\n");
    CHECK(c.experiment == "scan_loud");
    CHECK(c.x_values == std::vector<double>{2, 3.5, 1e6});
    CHECK(c.d.values() == std::vector<double>{-1.2, -1.0, -0.8});
    CHECK(c.tol.at("identity") == 1e-9);
    CHECK(c.seed == 42);
    CHECK_NOTHROW(c.validate());
    apply_tol_override(c, "final=0.2");
    CHECK(c.tol.at("final") == 0.2);
}

TEST_CASE("config errors") {
    ExperimentConfig c;
    CHECK_THROWS_AS(load_config_text(c, "flux_capacitor = 1.21\n"), ConfigError);
    CHECK_THROWS_AS(load_config_text(c, "resolution = many\n"), ConfigError);
    CHECK_THROWS_AS(load_config_text(c, "no equals sign here\n"), ConfigError);
    CHECK_THROWS_AS(load_config_text(c, "tol.nonexistent = 1\n"), ConfigError);
    CHECK_THROWS_AS(apply_tol_override(c, "identity"), ConfigError);
    CHECK_THROWS_AS(apply_tol_override(c, "identity=abc"), ConfigError);
    CHECK_THROWS_AS(load_config_file(c, "/nonexistent/dir/x.cfg"), ConfigError);
    try {
        load_config_text(c, "experiment = compensator\nbogus = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
    ExperimentConfig d;
    d.experiment = "warp_drive";
    CHECK_THROWS_AS(d.validate(), ConfigError);
    d.experiment = "theorem_c";
    d.m = 3;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    std::ostringstream o, l;
    CHECK_THROWS_AS(run_experiment(d, o, l), ConfigError);
}

TEST_CASE("CSV quoting and numbers") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_field("") == "");
    CHECK(csv_number(0.5) == "0.5");
    CHECK(csv_number(-1e-300) == "-1e-300");
    CHECK(std::stod(csv_number(0.1)) == 0.1);
    CHECK(csv_number(NAN) == "nan");
    // a comma-decimal locale must not leak into the output
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8")) {
        CHECK(csv_number(2.5) == "2.5");
        std::setlocale(LC_NUMERIC, "C");
    }
    std::ostringstream os;
    CsvWriter w(os);
    w.row({"x", "note"});
    w.row({"1", "a \"b\", c"});
    CHECK(os.str() == "x,note\r\n1,\"a \"\"b\"\", c\"\r\n");
    auto back = read_csv(os.str());
    REQUIRE(back.size() == 2);
    CHECK(back[1][1] == "a \"b\", c");
}

TEST_CASE("compensator command") {
    auto r = run("experiment = compensator\nx_values = 2.718281828459045, 10\nalpha_values = -1.5, -1, 0\n");
    CHECK(r.code == kOk);
    REQUIRE(r.rows.size() == 7);
    const auto& h = r.rows[0];
    CHECK(h == std::vector<std::string>{"x", "alpha", "omega", "Omega", "G", "K"});
    // omega(e, -1) = 1 and Omega(x, -1) = log x
    CHECK(std::stod(r.rows[2][2]) == doctest::Approx(1).epsilon(1e-15));
    CHECK(std::stod(r.rows[5][3]) == doctest::Approx(std::log(10.0)).epsilon(1e-15));
    // Omega increasing in alpha at fixed x
    CHECK(std::stod(r.rows[4][3]) < std::stod(r.rows[5][3]));
    CHECK(std::stod(r.rows[5][3]) < std::stod(r.rows[6][3]));
}

TEST_CASE("theorem_c command: m = 0, m = 1, rejected fit") {
    auto r = run("experiment = theorem_c\nm = 0\nschedule_points = 15\n");
    CHECK(r.code == kOk);
    const auto& h = r.rows.at(0);
    const int acc = column(h, "accepted"), fam = column(h, "family"), dev = column(h, "deviation");
    REQUIRE(acc >= 0);
    REQUIRE(fam >= 0);
    REQUIRE(dev >= 0);
    CHECK(r.rows.size() == 1 + 3 * 15);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i][acc] == "true");
    auto r1 = run("experiment = theorem_c\nm = 1\n");
    CHECK(r1.code == kOk);
    // beta > alpha: the pair decays like x^beta, so the alpha trace must be rejected
    auto bad = run("experiment = theorem_c\nm = 1\nalpha_grid = -3\nbeta_shift = 0.5\nschedule_points = 6\n");
    CHECK(bad.code == kAcceptanceFailure);
    const int ac = column(bad.rows.at(0), "accepted");
    REQUIRE(ac >= 0);
    CHECK(bad.rows.at(1)[ac] == "false");
}

TEST_CASE("scan commands on a single cell") {
    auto r = run("experiment = scan_power\nq_min = -0.3333333333333333\nq_max = -0.3333333333333333\nq_steps = 1\n"
                 "p_min = 2\np_max = 2\np_steps = 1\nresolution = 60\nexpect_max_count = 0\n");
    CHECK(r.code == kOk);
    REQUIRE(r.rows.size() == 2);
    const auto& h = r.rows[0];
    CHECK(h[0] == "q");
    CHECK(h[1] == "p");
    CHECK(r.rows[1][column(h, "count")] == "0");
    CHECK(r.rows[1][column(h, "label")] == "certified");
    auto far = run("experiment = scan_power\nq_min = 0.5\nq_max = 0.5\nq_steps = 1\n"
                   "p_min = 3\np_max = 3\np_steps = 1\nresolution = 40\n");
    CHECK(far.rows.at(1)[column(far.rows[0], "label")] == "exploratory");
    auto l = run("experiment = scan_loud\nd_min = -1\nd_max = -1\nd_steps = 1\nresolution = 60\n");
    CHECK(l.code == kOk);
    const auto& lh = l.rows.at(0);
    CHECK(lh[0] == "D");
    const int xi = column(lh, "xi");
    REQUIRE(xi >= 0);
    CHECK(std::fabs(std::stod(l.rows.at(1)[xi]) - 0.5) < 0.05);
    auto iso = run("experiment = scan_loud\nd_min = -0.5\nd_max = -0.5\nd_steps = 1\nresolution = 40\n");
    CHECK(iso.rows.at(1)[column(iso.rows[0], "status")] == "isochronous");
    CHECK(iso.code == kOk);
    // with an expectation set, an isochronous cell cannot certify a count
    auto iso2 = run("experiment = scan_loud\nd_min = -0.5\nd_max = -0.5\nd_steps = 1\nresolution = 40\n"
                    "expect_max_count = 1\n");
    CHECK(iso2.code == kAcceptanceFailure);
}

TEST_CASE("scan expectation failures set exit code 2") {
    auto r = run("experiment = scan_power\nq_min = 0.035\nq_max = 0.035\nq_steps = 1\n"
                 "p_min = 1.965\np_max = 1.965\np_steps = 1\nresolution = 80\nexpect_max_count = 0\n");
    const int cnt = column(r.rows.at(0), "count");
    if (std::stoi(r.rows.at(1)[cnt]) > 0)
        CHECK(r.code == kAcceptanceFailure);
    else
        CHECK(r.code == kOk);
}

TEST_CASE("verify_identities command") {
    auto r = run("experiment = verify_identities\nsamples = 3\nseed = 5\n");
    CHECK(r.code == kOk);
    const auto& h = r.rows.at(0);
    CHECK(h == std::vector<std::string>{"identity", "sample", "x", "lhs", "rhs", "rel_err", "tol", "pass"});
    CHECK(r.rows.size() > 9 * 3);
    for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i][7] == "true");
    // identity names with commas or quotes survive the round trip
    bool seen = false;
    for (std::size_t i = 1; i < r.rows.size(); ++i) seen = seen || r.rows[i][0] == "F[f](h) = sqrt2 h^2 T'(h^2)";
    CHECK(seen);
    // same seed, same output
    auto again = run("experiment = verify_identities\nsamples = 3\nseed = 5\n");
    CHECK(again.rows == r.rows);
    // an impossible tolerance fails
    auto strict = run("experiment = verify_identities\nsamples = 2\ntol.identity = 1e-30\n");
    CHECK(strict.code == kAcceptanceFailure);
}
