#include "percrit/potential.hpp"

#include <cmath>
#include <string>

#include "percrit/errors.hpp"

namespace percrit {

namespace {

constexpr int kTaylorTerms = 48;

bool is_integer(double g) { return g == std::floor(g); }

}  // namespace

PotentialCenter::PotentialCenter(double c0, std::vector<PowerTerm> terms, double x_left, double x_right,
                                 double h0, std::string label)
    : c0_(c0), terms_(std::move(terms)), xl_(x_left), xr_(x_right), h0_(h0), label_(std::move(label)) {
    if (!(x_left < 0 && x_right > 0)) throw DomainError("PotentialCenter: need x_left < 0 < x_right");
    if (!(h0 > 0)) throw DomainError("PotentialCenter: h0 must be positive");

    taylor_.assign(kTaylorTerms, 0.0);
    taylor_[0] = c0_;
    double radius = kInf;
    for (const auto& t : terms_) {
        double b = 1;  // binom(gamma, k) a^k
        for (int k = 0; k < kTaylorTerms; ++k) {
            if (k > 0) b *= (t.gamma - (k - 1)) / k * t.a;
            taylor_[k] += t.c * b;
        }
        bool poly = is_integer(t.gamma) && t.gamma >= 0 && t.gamma < kTaylorTerms - 2;
        if (!poly && t.a != 0) radius = std::min(radius, 1.0 / std::fabs(t.a));
    }
    const double v0 = taylor_[0], v1 = taylor_[1];
    if (std::fabs(v0) > 1e-12 * (1 + std::fabs(c0_)) || std::fabs(v1) > 1e-12)
        throw DomainError("PotentialCenter: V(0) and V'(0) must vanish");
    if (!(taylor_[2] > 0)) throw DomainError("PotentialCenter: V''(0) must be positive");
    taylor_[0] = taylor_[1] = 0;
    delta0_ = 0.25 * radius;
    gp0_ = std::sqrt(taylor_[2]);
}

Jet PotentialCenter::closed_jet(double x, int order) const {
    Jet r(order, c0_);
    for (const auto& t : terms_) {
        const double base = 1 + t.a * x;
        if (base > 0) {
            double p = std::pow(base, t.gamma);
            r[0] += t.c * p;
            double c = t.c * p;
            for (int k = 1; k <= order; ++k) {
                c *= (t.gamma - (k - 1)) / k * t.a / base;
                r[k] += c;
            }
        } else if (base == 0) {
            double b = 1;
            for (int k = 0; k <= order; ++k) {
                if (k > 0) b *= (t.gamma - (k - 1)) / k * t.a;
                double e = t.gamma - k;
                if (b == 0) continue;
                if (e > 0) continue;
                r[k] += (e == 0) ? t.c * b : t.c * b * kInf;
            }
        } else {
            throw DomainError("PotentialCenter: argument outside the domain of V");
        }
    }
    return r;
}

Jet PotentialCenter::w_jet(double x, int order) const {
    // W = V/x^2 = sum_k taylor_[k+2] x^k, shifted to x
    constexpr int n = kTaylorTerms - 2;
    double p[n];
    for (int k = 0; k < n; ++k) p[k] = taylor_[k + 2];
    Jet r(order);
    int deg = n - 1;
    for (int j = 0; j <= order; ++j) {
        double s = 0;
        for (int k = deg; k >= 0; --k) s = s * x + p[k];
        r[j] = s;
        // p <- p' / (j+1)
        for (int k = 0; k < deg; ++k) p[k] = p[k + 1] * (k + 1) / (j + 1);
        --deg;
        if (deg < 0) break;
    }
    return r;
}

Jet PotentialCenter::jet(double x, int order) const {
    if (std::fabs(x) < delta0_) {
        Jet xx = Jet::variable(order, x);
        return xx * xx * w_jet(x, order);
    }
    return closed_jet(x, order);
}

double PotentialCenter::V(double x) const { return jet(x, 0).value(); }

double PotentialCenter::derivative(int k, double x) const {
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    if (k >= Jet::kCap) throw CapabilityError("derivative order too large");
    return jet(x, k).derivative(k);
}

double PotentialCenter::energy_gap(double x) const {
    double s = h0_ - c0_;
    for (const auto& t : terms_) {
        const double base = 1 + t.a * x;
        if (base < 0) throw DomainError("energy_gap: argument outside the domain of V");
        s -= t.c * std::pow(base, t.gamma);
    }
    return s;
}

Jet PotentialCenter::g_jet(double x, int order) const {
    if (std::fabs(x) < delta0_) return Jet::variable(order, x) * sqrt(w_jet(x, order));
    Jet v = closed_jet(x, order);
    Jet s = sqrt(v);
    return x < 0 ? -s : s;
}

double PotentialCenter::g(double x) const {
    if (std::fabs(x) < delta0_) return x * std::sqrt(w_jet(x, 0).value());
    double v = closed_jet(x, 0).value();
    return x < 0 ? -std::sqrt(v) : std::sqrt(v);
}

void PotentialCenter::check_z(double z) const {
    if (std::isnan(z)) throw OutOfAnnulusError("g_inverse: NaN argument");
    if (finite_energy() && !(std::fabs(z) < std::sqrt(h0_)))
        throw OutOfAnnulusError("g_inverse: |z| must be below sqrt(h0)");
}

double PotentialCenter::g_inverse(double z) const {
    check_z(z);
    if (z == 0) return 0;
    double lo, hi;
    if (z > 0) {
        lo = 0;
        hi = xr_;
        if (!std::isfinite(hi)) {
            hi = 1;
            while (g(hi) < z) {
                lo = hi;
                hi *= 2;
            }
        }
    } else {
        hi = 0;
        lo = xl_;
        if (!std::isfinite(lo)) {
            lo = -1;
            while (g(lo) > z) {
                hi = lo;
                lo *= 2;
            }
        }
    }
    double x = z / gp0_;
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        Jet gj = g_jet(x, 1);
        double phi = gj[0] - z;
        if (phi == 0) return x;
        if (phi > 0) hi = x;
        else lo = x;
        double xn = x - phi / gj[1];
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::fabs(xn - x) <= 2e-16 * std::fabs(x) || hi - lo <= 2e-16 * std::fabs(x)) return xn;
        x = xn;
    }
    return x;
}

Jet PotentialCenter::g_inverse_jet(double z, int order) const {
    if (order + 1 >= Jet::kCap) throw CapabilityError("g_inverse_jet: order too large");
    double u = g_inverse(z);
    Jet t = g_jet(u, order).revert();
    t[0] = u;
    return t;
}

double PotentialCenter::g_inverse_derivative(double z, int order) const {
    if (order < 0) throw DomainError("g_inverse_derivative: negative order");
    if (order == 0) return g_inverse(z);
    return g_inverse_jet(z, order).derivative(order);
}

Jet PotentialCenter::f_family_jet(double z, int order) const {
    Jet tp = g_inverse_jet(z, order + 2);
    Jet tm = g_inverse_jet(-z, order + 2);
    // second derivative jets: coefficient k of (g^{-1})'' is (k+2)(k+1) r_{k+2}
    Jet d(order);
    for (int k = 0; k <= order; ++k) {
        double yp = (k + 2) * (k + 1) * tp[k + 2];
        double ym = (k + 2) * (k + 1) * tm[k + 2];
        d[k] = yp - ((k % 2 == 0) ? ym : -ym);
    }
    return Jet::variable(order, z) * d;
}

double PotentialCenter::f_family(double z) const {
    if (z == 0) {
        check_z(z);
        return 0;
    }
    return f_family_jet(z, 0).value();
}

double PotentialCenter::f_family_derivative(int k, double z) const {
    if (k == 0) return f_family(z);
    return f_family_jet(z, k).derivative(k);
}

double PotentialCenter::rescaled_f_family(double z) const {
    if (!finite_energy()) throw DomainError("rescaled_f_family: infinite h0");
    return f_family(z * std::sqrt(h0_));
}

double PotentialCenter::rescaled_f_derivative(int k, double z) const {
    if (!finite_energy()) throw DomainError("rescaled_f_derivative: infinite h0");
    const double s = std::sqrt(h0_);
    return std::pow(s, k) * f_family_derivative(k, z * s);
}

HypothesisHReport hypothesis_h_report(const CenterBuilder& build,
                                      const std::vector<std::pair<double, double>>& mu_grid, double tol) {
    HypothesisHReport rep;
    constexpr double d = 1e-7, refine = 100;
    auto jump = [](double a, double b) -> double {
        if (std::isinf(a) || std::isinf(b)) return (a == b) ? 0.0 : 1e300;
        return std::fabs(a - b) / (1 + std::fabs(a));
    };
    // a jump above tol is a discontinuity only if it does not shrink with the nudge:
    // steep but continuous dependence (high derivatives near a singular edge) scales like the nudge
    auto continuous = [&](double j, double j_fine) { return j < tol || j_fine < tol || j_fine < 3 * j / refine; };
    for (auto [m1, m2] : mu_grid) {
        try {
            PotentialCenter P = build(m1, m2);
            for (int dir = 0; dir < 2; ++dir) {
                PotentialCenter Q = dir == 0 ? build(m1 + d, m2) : build(m1, m2 + d);
                PotentialCenter Qf = dir == 0 ? build(m1 + d / refine, m2) : build(m1, m2 + d / refine);
                double jr = jump(P.x_right(), Q.x_right());
                double jl = jump(P.x_left(), Q.x_left());
                double jh = jump(P.h0(), Q.h0());
                rep.x_right_continuous = rep.x_right_continuous && continuous(jr, jump(P.x_right(), Qf.x_right()));
                rep.x_left_continuous = rep.x_left_continuous && continuous(jl, jump(P.x_left(), Qf.x_left()));
                rep.h0_continuous = rep.h0_continuous && continuous(jh, jump(P.h0(), Qf.h0()));
                rep.max_jump = std::max({rep.max_jump, jr, jl, jh});
                double lo = std::max(P.x_left(), Q.x_left()), hi = std::min(P.x_right(), Q.x_right());
                if (!std::isfinite(lo)) lo = -2;
                if (!std::isfinite(hi)) hi = 2;
                for (double fr : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) {
                    double x = fr < 0 ? -fr * lo : fr * hi;
                    for (int k = 0; k <= rep.max_order; ++k) {
                        const double a = P.derivative(k, x);
                        double j = jump(a, Q.derivative(k, x));
                        rep.max_jump = std::max(rep.max_jump, j);
                        if (!(j < tol) && !continuous(j, jump(a, Qf.derivative(k, x)))) rep.derivatives_continuous = false;
                        ++rep.points_checked;
                    }
                }
            }
        } catch (const std::exception&) {
            rep.derivatives_continuous = false;
        }
    }
    return rep;
}

}  // namespace percrit
