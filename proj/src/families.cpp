#include "percrit/families.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "percrit/errors.hpp"

namespace percrit {

namespace {

double toms748(const std::function<double(double)>& f, double a, double b) {
    boost::uintmax_t it = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    auto r = boost::math::tools::toms748_solve(f, a, b, tol, it);
    return 0.5 * (r.first + r.second);
}

}  // namespace

PotentialCenter harmonic_center() {
    // x^2/2 = (1+x)^2/2 - (1+x) + 1/2
    return PotentialCenter(0.5, {{0.5, 1, 2}, {-1, 1, 1}}, -PotentialCenter::kInf, PotentialCenter::kInf,
                           PotentialCenter::kInf, "harmonic");
}

// ---------------------------------------------------------------- power family

double PowerParams::h0() const { return (p - q) / ((p + 1) * (q + 1)); }

double PowerParams::x_right() const { return std::pow((p + 1) / (q + 1), 1 / (p - q)) - 1; }

PotentialCenter power_center(const PowerParams& mu) {
    const double q = mu.q, p = mu.p;
    if (!(p > q)) throw DomainError("power_center: need p > q");
    if (q == -1 || p == -1) throw DomainError("power_center: logarithmic case q or p = -1");
    if (!(q > -1)) throw DomainError("power_center: infinite-energy case q < -1 is not supported");
    return PotentialCenter(mu.h0(), {{1 / (p + 1), 1, p + 1}, {-1 / (q + 1), 1, q + 1}}, -1.0, mu.x_right(),
                           mu.h0(), "power(" + std::to_string(q) + "," + std::to_string(p) + ")");
}

double power_f(double p) {
    if (!(p > -1.0 / 3)) throw DomainError("power_f: p must exceed -1/3");
    const double e = (3 + 3 * p) / (1 + 3 * p);
    return std::pow((3 + 3 * p) / 2, e) - 3 * p - 2;
}

double find_p1() {
    // f(1) > 0 > f(2) and f is decreasing through its only zero
    return toms748(power_f, 1.0, 2.0);
}

BoundaryQuantifiers power_boundary_quantifiers(const PowerParams& mu) {
    const double xr = mu.x_right();
    return {-(mu.q + 1), 1 / (mu.q + 1), -1.0, std::pow(xr + 1, mu.p) - std::pow(xr + 1, mu.q)};
}

// ---------------------------------------------------------------- Loud family

LoudParams::LoudParams(double D_, double F_) : D(D_), F(F_) {
    if (!(F > 1 && D < 0 && D + F > 0)) throw DomainError("LoudParams: (D, F) outside the parameter region");
    a = D / (2 * (1 - F));
    b = (D - F + 1) / ((1 - F) * (1 - 2 * F));
    c = (F - D - 1) / (2 * F * (1 - F) * (1 - 2 * F));
    const double disc = b * b - 4 * a * c;
    if (!(disc > 0)) throw DomainError("LoudParams: conic does not meet the axis twice");
    const double s = std::sqrt(disc);
    // (-b - s)/(2a) without cancellation: a > 0 here, so use the conjugate when b < 0
    const double r1 = b < 0 ? 2 * c / (-b + s) : (-b - s) / (2 * a);
    const double r2 = c / (a * r1);
    p1 = std::min(r1, r2);
    p2 = std::max(r1, r2);
    if (!(0 < p1 && p1 < p2 && p1 < 1)) throw DomainError("LoudParams: need 0 < p1 < p2");
    h0 = (F - D - 1) / (2 * F * (F - 1) * (2 * F - 1));
    u_r = std::expm1(-F * std::log1p(-p1)) / F;
}

double LoudParams::A() const { return D / (2 - 2 * F); }
double LoudParams::B() const { return (1 + 2 * D) / (2 * F - 1); }
double LoudParams::C() const { return -(D + 1) / (2 * F); }

PotentialCenter loud_center(const LoudParams& mu) {
    const double F = mu.F;
    if (F == 0.5 || F == 1) throw DomainError("loud_center: F in {1/2, 1}");
    // Derivatives of every order come from the power terms; the z-table of orders
    // 0..4 is exposed separately and cross-checked in tests. Orders 5 and 6 follow
    // by differentiating the same terms, i.e. once more through z(u) by the chain rule.
    return PotentialCenter(mu.h0, {{-mu.A(), F, 2 - 2 / F}, {-mu.B(), F, 2 - 1 / F}, {-mu.C(), F, 2.0}}, -1 / F,
                           mu.u_r, mu.h0, "loud(" + std::to_string(mu.D) + "," + std::to_string(F) + ")");
}

VTable loud_vtable(const LoudParams& mu, double u) {
    const double D = mu.D, F = mu.F;
    const double w = F * u + 1;
    if (!(w > 0)) throw DomainError("loud_vtable: u must exceed -1/F");
    const double z = std::pow(w, -1 / F);
    VTable t;
    t.poly[0] = D / (2 - 2 * F) * z * z + (1 + 2 * D) / (2 * F - 1) * z - (D + 1) / (2 * F);
    t.poly[1] = (z - 1) * (D * (z - 1) - 1);
    t.poly[2] = D * (F - 2) * z * z - (2 * D + 1) * (F - 1) * z + F * (D + 1);
    t.poly[3] = -2 * D * (F - 2) * z * z + (2 * D + 1) * (F - 1) * z;
    t.poly[4] = 2 * D * (F * F - 4) * z * z - (2 * D + 1) * (F * F - 1) * z;
    const double zF = std::pow(z, F);
    t.value[0] = mu.h0 - t.poly[0] / (zF * zF);
    t.value[1] = t.poly[1] / zF;
    t.value[2] = t.poly[2];
    t.value[3] = zF * t.poly[3];
    t.value[4] = zF * zF * t.poly[4];
    return t;
}

double loud_L(double z, const LoudParams& mu) {
    const double D = mu.D, F = mu.F;
    const double V1 = (z - 1) * (D * (z - 1) - 1);
    const double V2 = D * (F - 2) * z * z - (2 * D + 1) * (F - 1) * z + F * (D + 1);
    return std::pow(z, -2 * F) * V1 * V1 + (D - 1) / 6 * V2;
}

double loud_L_at_boundary(double D, double F) {
    LoudParams mu(D, F);
    return loud_L(1 - mu.p1, mu);
}

double loud_find_L_root(double F) {
    // scan (-2, 0) on the region D > -F, then refine the unique sign change
    const double lo = std::max(-2.0, -F) + 1e-9, hi = -1e-9;
    const int n = 400;
    double xa = lo, fa = loud_L_at_boundary(xa, F);
    for (int i = 1; i <= n; ++i) {
        double xb = lo + (hi - lo) * i / n, fb = loud_L_at_boundary(xb, F);
        if (fa == 0) return xa;
        if ((fa < 0) != (fb < 0)) return toms748([F](double D) { return loud_L_at_boundary(D, F); }, xa, xb);
        xa = xb;
        fa = fb;
    }
    throw ConvergenceError("loud_find_L_root: no sign change on (-2, 0)");
}

double loud_L_derivative_fd(double D, double F, double step) {
    return (loud_L_at_boundary(D + step, F) - loud_L_at_boundary(D - step, F)) / (2 * step);
}

double loud_L_derivative_substituted(double D, double F) {
    LoudParams mu(D, F);
    const double z = 1 - mu.p1;
    const double V1 = (z - 1) * (D * (z - 1) - 1);
    const double V2 = D * (F - 2) * z * z - (2 * D + 1) * (F - 1) * z + F * (D + 1);
    const double dzV1 = 2 * D * (z - 1) - 1;
    const double dDV1 = (z - 1) * (z - 1);
    const double dDV2 = (F - 2) * z * z - 2 * (F - 1) * z + F;
    // dp1/dD from the implicit quadratic a p^2 + b p + c = 0
    const double aD = 1 / (2 * (1 - F)), bD = 1 / ((1 - F) * (1 - 2 * F)), cD = -1 / (2 * F * (1 - F) * (1 - 2 * F));
    const double p = mu.p1;
    const double dp1 = -(aD * p * p + bD * p + cD) / (2 * mu.a * p + mu.b);
    const double dzV2 = 2 * D * (F - 2) * z - (2 * D + 1) * (F - 1);
    const double zpow = (1 - D) * V2 / (6 * V1 * V1);  // replaces z^{-2F}
    // last term: total D-derivative of (D-1) V2(1 - p1(D), D)
    return zpow * (2 * V1 * dzV1 - 2 * F * V1 * V1 / z) * (-dp1) + zpow * 2 * V1 * dDV1 +
           (V2 + (D - 1) * (dDV2 - dzV2 * dp1)) / 6;
}

double loud_nu(double F) { return (F - 2) / (F - 1); }

LoudXiChain loud_xi_closed_form(double F) {
    LoudXiChain c;
    c.beta_l = (2 - 2 * F) / F;
    c.beta_r = -1;
    c.alpha_l = (4 * F - 7) / F;
    c.alpha_r = (2 - F) / (2 * (F - 1));
    c.nu = loud_nu(F);
    c.xi = -std::min(c.alpha_l / c.beta_l, c.alpha_r / c.beta_r) - 0.5 * c.nu;
    return c;
}

double loud_C2(const LoudParams& mu) {
    const double D = mu.D;
    auto t = loud_vtable(mu, mu.u_r);
    const double v1 = t.value[1], v2 = t.value[2];
    return (D - 1) * (6 * v1 * v1 + (D - 1) * v2) / (12 * std::sqrt(3 * (1 - D)) * v1);
}

Quantifier loud_xi_estimate(const LoudParams& mu, const Schedule& schedule) {
    const PotentialCenter P = loud_center(mu);
    const ExponentTuple nu{{loud_nu(mu.F)}};
    SmoothFn ft([&P](int k, double z) { return P.rescaled_f_derivative(k, z); }, 4, 0.0, 1.0);
    return estimate_quantifier([&](double z) { return op_D(nu, ft, z); }, Boundary::left_of(1.0), schedule);
}

BoundaryEstimates estimate_energy_gap_quantifiers(const PotentialCenter& P, const Schedule& schedule) {
    auto gap = [&P](double x) { return P.energy_gap(x); };
    Schedule sl = schedule, sr = schedule;
    // start within the annulus on each side
    sl.start = std::min(schedule.start, 0.5 * -P.x_left());
    sr.start = std::min(schedule.start, 0.5 * P.x_right());
    return {estimate_quantifier(gap, Boundary::right_of(P.x_left()), sl),
            estimate_quantifier(gap, Boundary::left_of(P.x_right()), sr)};
}

}  // namespace percrit
