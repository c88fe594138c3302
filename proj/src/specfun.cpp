#include "percrit/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "percrit/errors.hpp"

namespace percrit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

bool is_nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

// 1/Gamma, zero on the poles
double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

constexpr int kEtaTerms = 40;

const std::array<double, kEtaTerms + 1>& eta_table() {
    static const std::array<double, kEtaTerms + 1> t = [] {
        std::array<double, kEtaTerms + 1> e{};
        e[1] = kLn2;
        for (int k = 2; k <= kEtaTerms; ++k)
            e[k] = -std::expm1((1 - k) * kLn2) * boost::math::zeta(double(k));
        return e;
    }();
    return t;
}

// log((1+a)G(a)) at a = -1 + eps, |eps| < 1/4
double log_ratio_series(double eps) {
    const auto& eta = eta_table();
    double s = 0, p = 1;
    for (int k = 1; k <= kEtaTerms; ++k) {
        p *= eps;
        double term = eta[k] * p / k;
        s += (k % 2 == 1) ? term : -term;
        if (std::fabs(p) < 1e-18 * std::fabs(s)) break;
    }
    return s;
}

double series_2f1(double a, double b, double c, double z) {
    double term = 1, sum = 1;
    for (int n = 0; n < 5000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z;
        sum += term;
        if (term == 0 || std::fabs(term) < 1e-17 * std::fabs(sum)) return sum;
    }
    throw ConvergenceError("hyp2f1: series did not converge");
}

// terminating series when a or b is a non-positive integer
bool polynomial_2f1(double a, double b, double c, double z, double& out) {
    double n = 0;
    if (is_nonpositive_integer(a)) n = -a;
    else if (is_nonpositive_integer(b)) n = -b;
    else return false;
    double term = 1, sum = 1;
    for (int k = 0; k < int(n); ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
        sum += term;
    }
    out = sum;
    return true;
}

// continue the hypergeometric ODE from 1/2 to z in (1/2, 1) by Taylor steps
double ode_2f1(double a, double b, double c, double z) {
    double z0 = 0.5;
    double y = series_2f1(a, b, c, z0);
    double dy = a * b / c * series_2f1(a + 1, b + 1, c + 1, z0);
    const double r = -a * b;
    while (z0 < z) {
        double h = std::min(z - z0, 0.5 * (1 - z0));
        if (z - z0 - h < 1e-15 * (1 - z0)) h = z - z0;
        const double p0 = z0 * (1 - z0), p1 = 1 - 2 * z0, p2 = -1;
        const double q0 = c - (a + b + 1) * z0, q1 = -(a + b + 1);
        double ck = y, ck1 = dy;  // c_k, c_{k+1}
        double ys = ck + ck1 * h, dys = ck1;
        double hp = h;  // h^(k+1)
        for (int k = 0; k < 400; ++k) {
            double ck2 = -((p1 * k + q0) * (k + 1) * ck1 + (p2 * k * (k - 1) + q1 * k + r) * ck) /
                         (p0 * (k + 2) * (k + 1));
            double tv = ck2 * hp * h;
            double td = (k + 2) * ck2 * hp;
            ys += tv;
            dys += td;
            hp *= h;
            ck = ck1;
            ck1 = ck2;
            if (k > 4 && std::fabs(tv) < 1e-17 * std::fabs(ys) && std::fabs(td) < 1e-17 * std::fabs(dys)) break;
        }
        y = ys;
        dy = dys;
        z0 += h;
    }
    return y;
}

// w = 1 - z supplied separately so it keeps full relative precision
double connection_2f1(double a, double b, double c, double /*z*/, double w) {
    const double s = c - a - b;
    double t1 = std::tgamma(c) * std::tgamma(s) * rgamma(c - a) * rgamma(c - b) *
                series_2f1(a, b, 1 - s, w);
    double t2 = std::pow(w, s) * std::tgamma(c) * std::tgamma(-s) * rgamma(a) * rgamma(b) *
                series_2f1(c - a, c - b, 1 + s, w);
    return t1 + t2;
}

double hyp2f1_unit(double a, double b, double c, double z, double w) {
    // z in [0, 1), w = 1 - z
    if (z <= 0.5) return series_2f1(a, b, c, z);
    const double s = c - a - b;
    if (std::fabs(s - std::round(s)) < 1e-3) {
        const double v = ode_2f1(a, b, c, z);
        if (!std::isfinite(v)) throw ConvergenceError("hyp2f1: no convergence near z = 1 (c-a-b near an integer)");
        return v;
    }
    return connection_2f1(a, b, c, z, w);
}

}  // namespace

double gamma(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at " + std::to_string(x));
    return std::tgamma(x);
}

double digamma(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("digamma: pole at " + std::to_string(x));
    return boost::math::digamma(x);
}

double dirichlet_eta(int k) {
    if (k < 1) throw DomainError("dirichlet_eta: k >= 1 required");
    if (k <= kEtaTerms) return eta_table()[k];
    return -std::expm1((1 - k) * kLn2) * boost::math::zeta(double(k));
}

double omega(double x, double alpha) {
    if (!(x > 0)) throw DomainError("omega: x must be positive");
    const double lx = std::log(x);
    if (alpha == -1.0) return lx;
    const double e = alpha + 1;
    const double t = e * lx;
    if (std::fabs(t) < 1e-8) return lx * (1 + t / 2 + t * t / 6);
    return std::expm1(t) / e;
}

double gamma_ratio(double alpha) {
    if (!(alpha > -2)) throw DomainError("gamma_ratio: alpha must exceed -2");
    const double eps = alpha + 1;
    if (eps == 0) return 1.0;
    if (std::fabs(eps) < 0.25) return std::exp(log_ratio_series(eps));
    return std::exp(std::lgamma((3 + alpha) / 2) - std::lgamma(1 + alpha / 2) + 0.5 * std::log(kPi));
}

double script_g(double alpha) {
    if (alpha == -1.0) throw DomainError("script_g: undefined at alpha = -1");
    if (!(alpha > -2)) throw DomainError("script_g: alpha must exceed -2");
    if (alpha > -1)
        return 0.5 * std::sqrt(kPi) * std::exp(std::lgamma((1 + alpha) / 2) - std::lgamma(1 + alpha / 2));
    return gamma_ratio(alpha) / (1 + alpha);
}

double script_k(double alpha) {
    if (!(alpha > -2)) throw DomainError("script_k: alpha must exceed -2");
    const double eps = alpha + 1;
    if (eps == 0) return kLn2;
    if (std::fabs(eps) < 0.25) {
        double L = log_ratio_series(eps);
        return std::expm1(L) / eps;
    }
    return (gamma_ratio(alpha) - 1) / eps;
}

double omega_big(double x, double alpha) {
    if (!(x > 1)) throw DomainError("omega_big: x must exceed 1");
    if (!(alpha > -2)) throw DomainError("omega_big: alpha must exceed -2");
    if (alpha == -1.0) return std::log(x);
    return gamma_ratio(alpha) * omega(x, alpha);
}

double b_factor(int m, double alpha) {
    if (m < 0) throw DomainError("b_factor: m must be nonnegative");
    double p = 1;
    for (int i = 1; i <= m; ++i) {
        double den = alpha + 2 * i - 1;
        if (den == 0) throw PoleError("b_factor: vanishing denominator");
        p *= (alpha + 2 * i) / den;
    }
    return p;
}

double hyp2f1(double a, double b, double c, double z) {
    if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
    if (z == 0) return 1.0;
    double poly;
    if (polynomial_2f1(a, b, c, z, poly)) return poly;
    if (z > 1) throw DomainError("hyp2f1: z > 1 not supported");
    if (z == 1) {
        const double s = c - a - b;
        if (s <= 0) throw ConvergenceError("hyp2f1: series diverges at z = 1 when c-a-b <= 0");
        return std::tgamma(c) * std::tgamma(s) * rgamma(c - a) * rgamma(c - b);
    }
    if (z >= 0) return hyp2f1_unit(a, b, c, z, 1 - z);
    if (z >= -0.5) return series_2f1(a, b, c, z);
    // Pfaff: (1-z)^-a F(a, c-b; c; z/(z-1))
    const double zz = z / (z - 1);
    return std::pow(1 - z, -a) * hyp2f1_unit(a, c - b, c, zz, 1 / (1 - z));
}

double hyp2f1_complement(double a, double b, double c, double w) {
    if (is_nonpositive_integer(c)) throw PoleError("hyp2f1: c is a non-positive integer");
    if (!(w > 0 && w <= 1)) return hyp2f1(a, b, c, 1 - w);
    const double z = 1 - w;
    double poly;
    if (polynomial_2f1(a, b, c, z, poly)) return poly;
    return hyp2f1_unit(a, b, c, z, w);
}

double tail_integral(double alpha, double M, double x, TailBranch branch) {
    if (!(M > 0) || !(x > M)) throw DomainError("tail_integral: need 0 < M < x");
    const double s = M / x;
    const double w = s * s;
    const double one_minus_w = (1 - s) * (1 + s);
    if (branch == TailBranch::Auto) {
        if (alpha == -1.0) branch = TailBranch::Closed;
        else if (alpha > -2 && w <= 0.25) branch = TailBranch::Series;
        else branch = TailBranch::Closed;
    }
    if (branch == TailBranch::Closed) {
        const double r = std::sqrt(one_minus_w);
        if (alpha == -1.0) return std::log1p(r) - std::log(s);
        return r * hyp2f1_complement(0.5, (1 - alpha) / 2, 1.5, w);
    }
    if (!(alpha > -2)) throw DomainError("tail_integral: series branch needs alpha > -2");
    if (w >= 1) throw DomainError("tail_integral: series branch needs M < x");
    // K(a) - omega(s, a) - s^(1+a) sum_{n>=1} (1/2)_n/n! w^n / (1+a+2n)
    double poch = 1, wn = 1, S = 0;
    for (int n = 1; n < 4000; ++n) {
        poch *= (n - 0.5) / n;
        wn *= w;
        double term = poch * wn / (1 + alpha + 2 * n);
        S += term;
        if (std::fabs(term) < 1e-17 * std::fabs(S)) break;
    }
    return script_k(alpha) - omega(s, alpha) - std::pow(s, 1 + alpha) * S;
}

}  // namespace percrit
