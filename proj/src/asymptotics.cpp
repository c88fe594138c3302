#include "percrit/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "percrit/errors.hpp"
#include "percrit/specfun.hpp"

namespace percrit {

namespace {

// Aitken delta-squared on the last three entries ending at index i
bool aitken(const std::vector<double>& s, std::size_t i, double& out) {
    if (i < 2) return false;
    const double a = s[i - 2], b = s[i - 1], c = s[i];
    const double den = (c - b) - (b - a);
    if (!std::isfinite(den) || std::fabs(den) < 1e-300) return false;
    const double e = c - (c - b) * (c - b) / den;
    // reject extrapolations that jump far beyond the last step
    if (!std::isfinite(e) || std::fabs(e - c) > 10 * std::fabs(c - b) + 1e-300) return false;
    out = e;
    return true;
}

double extrapolate(const std::vector<double>& s, std::size_t i) {
    double e;
    return aitken(s, i, e) ? e : s[i];
}

}  // namespace

std::vector<double> Schedule::values() const {
    if (points < 1 || !(start > 0) || !(ratio > 1)) throw DomainError("Schedule: bad parameters");
    std::vector<double> v(points);
    for (int k = 0; k < points; ++k) v[k] = start * std::pow(ratio, k);
    return v;
}

Quantifier estimate_quantifier(const std::function<double(double)>& f, const Boundary& boundary,
                               const Schedule& schedule, const QuantifierOptions& opt) {
    Quantifier q;
    q.boundary = boundary;
    auto base = schedule.values();
    if (base.size() < 3) throw DomainError("estimate_quantifier: need at least 3 samples");
    // abscissa t: x at infinity, distance to b otherwise (decreasing along the schedule)
    std::vector<double> t(base.size()), y(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
        if (boundary.at_infinity) {
            t[k] = base[k];
            y[k] = f(t[k]);
        } else {
            t[k] = schedule.start * schedule.start / base[k];
            y[k] = f(boundary.b + boundary.side * t[k]);
        }
        if (!std::isfinite(y[k])) throw ConvergenceError("estimate_quantifier: non-finite sample");
    }
    q.samples = t;
    const double sign = boundary.at_infinity ? 1.0 : -1.0;
    for (std::size_t k = 0; k + 1 < t.size(); ++k) {
        if (y[k] == 0 || y[k + 1] == 0) throw ConvergenceError("estimate_quantifier: zero sample");
        q.slopes.push_back(sign * std::log(std::fabs(y[k + 1] / y[k])) / std::log(t[k + 1] / t[k]));
    }
    const std::size_t n = q.slopes.size() - 1;
    q.alpha_hat = extrapolate(q.slopes, n);
    q.residual = n >= 1 ? std::fabs(q.alpha_hat - extrapolate(q.slopes, n - 1)) : std::fabs(q.slopes[n]);

    auto ratios = [&](double alpha) {
        std::vector<double> g(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) g[k] = y[k] * std::pow(t[k], -sign * alpha);
        return g;
    };

    // compensator pattern: slope near an odd negative integer while f / x^alpha keeps drifting
    if (boundary.at_infinity) {
        // local exponent of f / log x at the end of the schedule
        const std::size_t L = t.size() - 1;
        const double cslope = t[L - 1] > 1 ? std::log(std::fabs(y[L] * std::log(t[L - 1]) / (y[L - 1] * std::log(t[L])))) /
                                                 std::log(t[L] / t[L - 1])
                                           : q.slopes[n];
        const double odd = 2 * std::round((cslope + 1) / 2) - 1;
        if (odd < 0 && std::fabs(cslope - odd) < opt.compensator_slope_tol) {
            auto g = ratios(odd);
            const double dec = std::log10(t[L] / t[L - 1]);
            const double drift = std::fabs(g[L] / g[L - 1] - 1) / dec;
            const bool mono = (g[L] - g[L - 1]) * (g[L - 1] - g[L - 2]) > 0;
            if (drift > opt.compensator_drift && mono) {
                q.mode = QuantifierMode::Compensator;
                q.alpha_hat = odd;
                q.ell_hat = g[L] / std::log(t[L]);
                q.residual = std::fabs(g[L] / std::log(t[L]) - g[L - 1] / std::log(t[L - 1])) / std::fabs(q.ell_hat);
                return q;
            }
        }
    }

    auto g = ratios(q.alpha_hat);
    q.ell_hat = extrapolate(g, g.size() - 1);
    double ymax = 0;
    for (double v : y) ymax = std::max(ymax, std::fabs(v));
    if (opt.throw_on_failure) {
        if (!(q.residual <= opt.residual_tol))
            throw ConvergenceError("estimate_quantifier: exponent fit did not settle");
        if (std::fabs(q.ell_hat) <= opt.zero_tol) throw ConvergenceError("estimate_quantifier: vanishing limit");
    }
    return q;
}

// ---------------------------------------------------------------- compensator asymptotics of F

namespace {

CompensatorFit make_fit(double alpha, const std::vector<double>& xs, const std::vector<double>& trace,
                        double final_tol) {
    CompensatorFit fit;
    fit.alpha = alpha;
    fit.xs = xs;
    fit.ratio_trace = trace;
    fit.monotone = true;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        fit.deviations.push_back(std::fabs(trace[k] - 1));
        if (k > 0 && !(fit.deviations[k] <= fit.deviations[k - 1])) fit.monotone = false;
    }
    fit.ell = trace.empty() ? 0 : trace.back();
    fit.accepted = fit.monotone && !trace.empty() && fit.deviations.back() <= final_tol && deviation_improves(fit);
    return fit;
}

}  // namespace

double fit_acceptance_deviation(const CompensatorFit& fit) {
    return fit.deviations.empty() ? std::numeric_limits<double>::infinity() : fit.deviations.back();
}

bool deviation_improves(const CompensatorFit& fit, double x_early) {
    if (fit.xs.empty()) return false;
    std::size_t k = 0;
    for (std::size_t i = 0; i < fit.xs.size(); ++i)
        if (std::fabs(std::log(fit.xs[i] / x_early)) < std::fabs(std::log(fit.xs[k] / x_early))) k = i;
    return k + 1 < fit.xs.size() && fit.deviations.back() < fit.deviations[k];
}

std::vector<CompensatorFit> verify_theorem_main(const std::function<SmoothFn(double)>& f_builder, double a, int m,
                                                const std::vector<double>& alpha_grid, const Schedule& schedule,
                                                const TheoremOptions& opt) {
    if (m < 0) throw DomainError("verify_theorem_main: m must be nonnegative");
    const auto xs = schedule.values();
    std::vector<CompensatorFit> out;
    for (double alpha : alpha_grid) {
        SmoothFn f = f_builder(alpha);
        if (m > 0) {
            auto mv = momentum_vector([&](double x) { return f(x); }, m, alpha);
            for (int i = 0; i < m; ++i)
                if (!mv.converged[i] || !(std::fabs(mv.values[i]) <= opt.momentum_tol))
                    throw MomentumViolation("verify_theorem_main: momentum M_" + std::to_string(i + 1) +
                                            " does not vanish");
        }
        SmoothFn g = f;
        if (m > 0) {
            LiftOptions lo = opt.lift;
            lo.vanishing_momentum = true;
            lo.tail_exponent = alpha;
            g = lift_fm(f, m, lo);
        }
        const double bm = b_factor(m, alpha);
        std::vector<double> trace;
        for (double x : xs) {
            // x^{2m+1} F[f](x) = x F[f_m](x)
            const double v = x * op_F(g, x, opt.op);
            trace.push_back(v / (a * bm * omega_big(x, alpha + 2 * m)));
        }
        out.push_back(make_fit(alpha, xs, trace, opt.final_tol));
    }
    return out;
}

CompensatorFit verify_theorem_main_gen(const ExponentTuple& nu, const SmoothFn& f, double a, double alpha, int m,
                                       const Schedule& schedule, const TheoremOptions& opt) {
    if (!nu.pairwise_distinct()) throw DomainError("verify_theorem_main_gen: exponents must be distinct");
    if (nu.size() == 0) {
        return verify_theorem_main([&](double) { return f; }, a, m, {alpha}, schedule, opt).front();
    }
    if (m != 0) throw CapabilityError("verify_theorem_main_gen: only m = 0 is supported for n >= 1");
    const auto xs = schedule.values();
    SmoothFn Ff = op_F_fn(f, opt.op);
    std::vector<double> trace;
    for (double x : xs) trace.push_back(x * op_L(nu, Ff, x) / (a * omega_big(x, alpha)));
    return make_fit(alpha, xs, trace, opt.final_tol);
}

// ---------------------------------------------------------------- test functions

SmoothFn power_test_function(double alpha) {
    return SmoothFn::from_jet(
        [alpha](double x, int o) {
            Jet v = Jet::variable(o, x);
            Jet q = Jet::power_of_linear(o, 1 + x * x, 1.0, (alpha - 1) / 2);
            // compose (1 + x^2 + s)^e with s = 2 x t + t^2
            Jet s(o);
            if (o >= 1) s[1] = 2 * x;
            if (o >= 2) s[2] = 1;
            return v * q.compose(s);
        },
        Jet::kCap - 1);
}

SmoothFn calibrated_pair(double alpha, double beta) {
    if (alpha == -1) throw DomainError("calibrated_pair: alpha = -1");
    return power_test_function(alpha) - ((beta + 1) / (alpha + 1)) * power_test_function(beta);
}

SmoothFn theorem_d_example(double alpha) {
    auto g = [alpha](double x) { return x * std::pow(1 + x * x, (alpha - 1) / 2); };
    auto f = [alpha, g](double x) -> double {
        if (x == 0) return 0;
        if (alpha == -1) {
            // -x + x^2 atan(1/x), by series in u = 1/x when x is large
            if (x > 10) {
                const double u = 1 / x, u2 = u * u;
                double s = 0, p = u;
                for (int k = 0; k < 12; ++k) {
                    s += (k % 2 == 0 ? -1.0 : 1.0) * p / (2 * k + 3);
                    p *= u2;
                }
                return s;
            }
            return -x + x * x * std::atan(1 / x);
        }
        QuadOptions o;
        o.rel_tol = 1e-13;
        auto r = integrate_to_infinity([&](double t) { return g(t) / (t * t * t); }, x, alpha - 3, o);
        return -x * x * r.value;
    };
    return SmoothFn(
        [f, g, alpha](int k, double x) -> double {
            if (k == 0) return f(x);
            // x f' - 2 f = g
            if (x == 0) return -1.0;
            if (alpha == -1 && x <= 1) return -1 + 2 * x * std::atan(1 / x) - x * x / (1 + x * x);
            return (g(x) + 2 * f(x)) / x;
        },
        1);
}

}  // namespace percrit
