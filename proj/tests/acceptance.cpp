// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
//
//   acceptance [--known-failure N]...
//
// Exit status 0 when the set of failing criteria equals the declared known failures
// (none by default), 2 otherwise.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "percrit/asymptotics.hpp"
#include "percrit/families.hpp"
#include "percrit/identities.hpp"
#include "percrit/period.hpp"
#include "percrit/quadrature.hpp"
#include "percrit/specfun.hpp"

using namespace percrit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// least-squares slope of log|y| against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = std::log(x[i]), v = std::log(std::fabs(y[i]));
        sx += u;
        sy += v;
        sxx += u * u;
        sxy += u * v;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------- 1
Outcome c1() {
    Outcome o;
    const double p1 = find_p1();
    o.require(std::fabs(p1 - 1.15685) <= 5e-5, fmt("p1 = %.8f", p1));
    o.detail = o.detail.empty() ? fmt("p1 = %.8f", p1) : o.detail;
    return o;
}

// ---------------------------------------------------------------- 2
Outcome c2() {
    Outcome o;
    int changes = 0;
    double prev = loud_L_at_boundary(-2 + 1e-3);
    for (int i = 1; i <= 1000; ++i) {
        const double v = loud_L_at_boundary(-2 + 1e-3 + (2 - 2e-3) * i / 1000);
        if ((v > 0) != (prev > 0)) ++changes;
        prev = v;
    }
    o.require(changes == 1, fmt("%g sign changes on (-2, 0)", changes));
    const double root = loud_find_L_root(2);
    o.require(std::fabs(root + 0.5) <= 1e-8, fmt("root %.12f", root));
    const double d = loud_L_derivative_fd(-1, 2);
    o.require(std::fabs(d + 1.0 / 12) <= 1e-6, fmt("FD derivative at (-1,2) = %.10f, expected -1/12 = %.10f", d, -1.0 / 12));
    if (o.pass) o.detail = fmt("root %.12f, derivative %.10f", root, d);
    return o;
}

// ---------------------------------------------------------------- 3
Outcome c3() {
    Outcome o;
    for (double x : {2.0, 10.0, 1e6}) o.require(omega_big(x, -1) == std::log(x), fmt("Omega(%g,-1) != log x", x));
    for (double x : {2.0, 10.0, 100.0}) {
        double prev = -INFINITY;
        bool inc = true;
        for (int i = 0; i < 1000; ++i) {
            const double v = omega_big(x, -1.99 + 11.99 * i / 999.0);
            inc = inc && v > prev;
            prev = v;
        }
        o.require(inc, fmt("Omega(%g, .) not increasing", x));
    }
    bool pos = true;
    for (int i = 0; i < 1000; ++i) pos = pos && script_k(-1.99 + 11.99 * (i + 0.5) / 1000) > 0;
    o.require(pos, "K not positive");
    o.require(std::fabs(script_k(-1) - std::log(2.0)) <= 1e-12, "K(-1) != log 2");
    o.require(std::fabs(digamma(1) - digamma(0.5) - 2 * std::log(2.0)) <= 1e-12, "digamma identity");
    if (o.pass) o.detail = fmt("K(-1) - log 2 = %.1e", script_k(-1) - std::log(2.0));
    return o;
}

// ---------------------------------------------------------------- 4
Outcome c4() {
    Outcome o;
    const Schedule s{10, std::sqrt(10.0), 15};  // up to 1e8
    auto fits = verify_theorem_main(power_test_function, 1, 0, {-1.05, -1, -0.95}, s);
    for (const auto& f : fits) {
        const double dev = fit_acceptance_deviation(f);
        o.require(f.monotone, fmt("alpha %g: trace not monotone", f.alpha));
        o.require(dev <= 0.1, fmt("alpha %g: final deviation %.4f", f.alpha, dev));
        o.require(deviation_improves(f, 1e4), fmt("alpha %g: no improvement since 1e4", f.alpha));
        if (o.pass) o.detail += fmt("a=%g dev=%.4f ", f.alpha, dev);
    }
    return o;
}

// ---------------------------------------------------------------- 5
Outcome c5() {
    Outcome o;
    SmoothFn pair = calibrated_pair(-3, -5);
    const double M1 = momentum_M([&](double x) { return pair(x); }, 1, -3);
    o.require(std::fabs(M1) <= 1e-9, fmt("M1 = %g", M1));
    if (!o.pass) return o;
    auto fits = verify_theorem_main([](double a) { return calibrated_pair(a, a - 2); }, 1, 1, {-3},
                                    Schedule{10, std::sqrt(10.0), 15});
    const auto& f = fits.at(0);
    const double dev = fit_acceptance_deviation(f);
    o.require(f.monotone, "trace not monotone");
    o.require(dev <= 0.15, fmt("final deviation %.4f", dev));
    o.require(deviation_improves(f, 1e4), "no improvement since 1e4");
    if (o.pass) o.detail = fmt("M1 = %.2e, final deviation %.4f", M1, dev);
    return o;
}

// ---------------------------------------------------------------- 6
Outcome c6() {
    Outcome o;
    const PotentialCenter fam[] = {power_center({0, 2}), power_center({-1.0 / 3, 2}), loud_center(LoudParams(-1, 2))};
    double worst = 0, worst_methods = 0;
    for (const auto& P : fam) {
        const double r = std::sqrt(P.h0());
        for (int k = 0; k < 10; ++k) {
            const double s = 0.1 + (0.999 - 0.1) * k / 9;
            const double h = s * r;
            const double lhs = op_F([&](double z) { return P.f_family(z); }, h);
            const double rhs = std::numbers::sqrt2 * h * h * period_derivative_fd(P, h * h);
            const double e = std::fabs(lhs - rhs) / std::fabs(rhs);
            worst = std::max(worst, e);
            const double t1 = period(P, h * h), t2 = period_direct(P, h * h);
            worst_methods = std::max(worst_methods, std::fabs(t1 - t2) / t2);
            o.require(e <= 1e-8, P.label() + fmt(" at %.3f sqrt(h0): rel err %.2e", s, e));
        }
    }
    o.require(worst_methods <= 1e-11, fmt("period methods disagree by %.2e", worst_methods));
    if (o.pass) o.detail = fmt("worst rel err %.2e, period methods within %.2e", worst, worst_methods);
    return o;
}

// ---------------------------------------------------------------- 7
Outcome c7() {
    Outcome o;
    for (PowerParams mu : {PowerParams{0, 2}, PowerParams{-1.0 / 3, 1}}) {
        auto est = estimate_energy_gap_quantifiers(power_center(mu));
        auto bq = power_boundary_quantifiers(mu);
        o.require(std::fabs(est.left.alpha_hat - bq.beta_l) <= 1e-3,
                  fmt("power (%g,%g) left exponent %.6f", mu.q, mu.p, est.left.alpha_hat));
        o.require(std::fabs(est.right.alpha_hat - bq.beta_r) <= 1e-3,
                  fmt("power (%g,%g) right exponent %.6f", mu.q, mu.p, est.right.alpha_hat));
    }
    const double F = 2;
    auto lest = estimate_energy_gap_quantifiers(loud_center(LoudParams(-1, F)));
    // h0 - V ~ c (F u + 1)^{(2F-2)/F}: quantifier exponent -(2F-2)/F
    o.require(std::fabs(lest.left.alpha_hat + (2 * F - 2) / F) <= 1e-3,
              fmt("Loud inner exponent %.6f", lest.left.alpha_hat));
    auto xi = loud_xi_estimate(LoudParams(-1, F));
    o.require(std::fabs(xi.alpha_hat - 0.5) <= 0.05, fmt("xi estimate %.4f", xi.alpha_hat));
    if (o.pass) o.detail = fmt("Loud inner %.6f, xi %.4f", lest.left.alpha_hat, xi.alpha_hat);
    return o;
}

// ---------------------------------------------------------------- 8
Outcome c8() {
    Outcome o;
    struct Region {
        const char* name;
        CenterBuilder build;
        double m1, m2;
        int max_allowed;
    };
    const Region regions[] = {
        {"power(-1/3,2)", [](double q, double p) { return power_center({q, p}); }, -1.0 / 3, 2, 0},
        {"power(0,2)", [](double q, double p) { return power_center({q, p}); }, 0, 2, 1},
        {"loud(-1,2)", [](double D, double F) { return loud_center(LoudParams(D, F)); }, -1, 2, 1},
    };
    for (const auto& r : regions) {
        auto mus = mu_grid9(r.m1, r.m2, 0.035);
        int mx[2] = {-1, -1};
        std::vector<int> counts[2];
        for (int pass = 0; pass < 2; ++pass) {
            ScanWindow w{1e-1, 1e-5, pass == 0 ? 400 : 800};
            for (const auto& c : scan_serial(r.build, mus, w)) {
                if (!c.ok) {
                    o.require(false, std::string(r.name) + ": cell error " + c.error);
                    continue;
                }
                o.require(!c.zc.identically_zero, std::string(r.name) + ": isochronous cell");
                counts[pass].push_back(c.zc.count);
                mx[pass] = std::max(mx[pass], c.zc.count);
            }
        }
        o.require(mx[0] <= r.max_allowed, std::string(r.name) + fmt(": max count %g", mx[0]));
        o.require(counts[0] == counts[1], std::string(r.name) + ": counts change under resolution doubling");
        // the lower-bound facet is only demonstrated: some cell should reach the bound
        const bool attained = std::count(counts[0].begin(), counts[0].end(), r.max_allowed) > 0;
        o.detail += std::string(r.name) + fmt(" max %g", mx[0]) + (attained ? " (attained); " : " (not attained); ");
    }
    return o;
}

// ---------------------------------------------------------------- 9
Outcome c9() {
    Outcome o;
    auto checks = identity_suite(IdentityOptions{10, 1, 1e-7, 1e-8});
    std::set<std::string> names;
    int fails = 0;
    double worst = 0;
    for (const auto& c : checks) {
        names.insert(c.identity);
        if (!c.pass) {
            ++fails;
            o.require(false, c.identity + fmt(" sample %g rel err %.2e", c.sample, c.rel_err));
        }
        worst = std::max(worst, c.rel_err);
    }
    for (const auto& n : names) {
        const auto k = std::count_if(checks.begin(), checks.end(), [&](const IdentityCheck& c) { return c.identity == n; });
        o.require(k >= 10, n + ": fewer than 10 samples");
    }
    if (o.pass) o.detail = fmt("%g identities x 10 samples, worst rel err %.2e", double(names.size()), worst);
    return o;
}

// ---------------------------------------------------------------- 10
Outcome c10() {
    Outcome o;
    double worst = 0;
    for (double a : {-1.5, -1.0, -0.5, 0.0, 0.7, 2.0})
        for (double M : {0.5, 1.0, 2.0})
            for (double xm : {1.5, 4.0, 30.0, 1000.0}) {
                const double x = M * xm;
                // sin^a is smooth on [asin(M/x), pi/2] for x > M
                auto q = integrate([a](double t) { return std::pow(std::sin(t), a); }, std::asin(M / x),
                                   std::numbers::pi / 2, QuadOptions{1e-13});
                for (TailBranch b : {TailBranch::Closed, TailBranch::Auto}) {
                    const double v = tail_integral(a, M, x, b);
                    const double e = std::fabs(v - q.value) / std::fabs(q.value);
                    worst = std::max(worst, e);
                    o.require(e <= 1e-9, fmt("alpha %g M %g x %g", a, M, x));
                }
            }
    double worst_slope = 0;
    for (double a : {-1.5, -1.0, -0.8})
        for (double M : {1.0, 2.0}) {
            std::vector<double> xs, rs;
            for (double x = 1e3; x <= 1.0001e6; x *= std::sqrt(10.0)) {
                xs.push_back(x);
                rs.push_back(std::pow(x, 1 + a) * tail_integral(a, M, x) - (omega_big(x, a) + script_k(a) - omega(M, a)));
            }
            const double s = loglog_slope(xs, rs);
            worst_slope = std::max(worst_slope, std::fabs(s + 2));
            o.require(std::fabs(s + 2) <= 0.1, fmt("remainder slope %.3f at alpha %g M %g", s, a, M));
        }
    if (o.pass) o.detail = fmt("worst rel err %.2e, worst |slope + 2| %.3f", worst, worst_slope);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> known;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--known-failure") == 0 && i + 1 < argc) {
            known.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--known-failure N]...\n", argv[0]);
            return 3;
        }
    }
    struct Criterion {
        int id;
        const char* title;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all{
        {1, "root p1", 1, c1},
        {2, "Loud L-root and derivative at (-1,2)", 5, c2},
        {3, "compensator suite", 1, c3},
        {4, "main asymptotics, m = 0", 60, c4},
        {5, "main asymptotics, m = 1", 120, c5},
        {6, "operator formula for T'", 60, c6},
        {7, "boundary quantifiers and xi", 120, c7},
        {8, "criticality scans", 600, c8},
        {9, "operator identity suite", 60, c9},
        {10, "tail integral closed forms", 60, c10},
    };
    std::set<int> failed;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) o.require(false, fmt("runtime %.1f s over budget %.0f s", secs, c.budget_s));
        if (!o.pass) failed.insert(c.id);
        std::printf("%s criterion %d (%s) [%.2f s]: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", all.size() - failed.size(), all.size());
    if (failed == known) {
        if (!known.empty()) std::printf("failures match the declared known failures\n");
        return 0;
    }
    return 2;
}
