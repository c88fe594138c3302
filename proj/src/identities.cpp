#include "percrit/identities.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "percrit/families.hpp"
#include "percrit/operators.hpp"
#include "percrit/period.hpp"

namespace percrit {

namespace {

// a exp(b x) + c / (1 + d x^2) + e x^3
struct RandFn {
    double a, b, c, d, e;

    Jet jet(double x, int o) const {
        Jet ex(o, std::exp(b * x));
        double f = 1;
        for (int k = 1; k <= o; ++k) {
            f *= b / k;
            ex[k] = ex[0] * f;
        }
        Jet v = Jet::variable(o, x);
        Jet r = Jet(o, c) / (v * v * d + 1.0);
        return ex * a + r + v * v * v * e;
    }
    SmoothFn fn() const {
        RandFn s = *this;
        return SmoothFn::from_jet([s](double x, int o) { return s.jet(x, o); }, 10, -1e300);
    }
};

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    RandFn fn() {
        return {uniform(0.5, 2), uniform(-1, 0.3), uniform(-2, 2), uniform(0.2, 2), uniform(-0.3, 0.3)};
    }
    ExponentTuple tuple(int n) {
        ExponentTuple t;
        while (int(t.nu.size()) < n) {
            double v = uniform(-0.9, 2.9);
            bool ok = true;
            for (double w : t.nu) ok = ok && std::fabs(v - w) > 0.2;
            if (ok) t.nu.push_back(v);
        }
        return t;
    }

private:
    std::mt19937_64 rng_;
};

IdentityCheck check(const std::string& name, int k, double x, double lhs, double rhs, double tol) {
    IdentityCheck c{name, k, x, lhs, rhs, 0, tol, false};
    const double scale = std::max(std::fabs(rhs), 1e-300);
    c.rel_err = std::fabs(lhs - rhs) / scale;
    c.pass = std::isfinite(lhs) && std::isfinite(rhs) && c.rel_err <= tol;
    return c;
}

}  // namespace

std::vector<IdentityCheck> identity_suite(const IdentityOptions& opt) {
    std::vector<IdentityCheck> out;
    Sampler S(opt.seed);
    const int N = opt.samples;
    const double tol = opt.tol;

    // B[psi_nu] = x^nu
    const double fixed_nu[] = {0, 1.3, -0.4};
    for (int k = 0; k < N; ++k) {
        const double nu = k < 3 ? fixed_nu[k] : S.uniform(-0.9, 2.5);
        const double x = k < 6 ? (k % 2 ? 2.0 : 0.5) : S.uniform(0.1, 4);
        SmoothFn p = SmoothFn::from_jet([nu](double z, int o) { return psi_jet(nu, z, o); }, 10, 0.0, 1.0);
        out.push_back(check("B[psi_nu] = x^nu", k, x, op_B(p, x), std::pow(x, nu), tol));
    }

    // B o D_nu = L_nu o B
    for (int k = 0; k < N; ++k) {
        ExponentTuple nu = S.tuple(1 + k % 2);
        SmoothFn f = S.fn().fn();
        const double x = S.uniform(0.1, 5);
        out.push_back(check("B o D = L o B", k, x, op_B(op_D_fn(nu, f), x), op_L(nu, op_B_fn(f), x), tol));
    }

    // F o B = sqrt(1+x^2) B o F
    for (int k = 0; k < N; ++k) {
        SmoothFn f = S.fn().fn();
        const double x = S.uniform(0.1, 5);
        const double lhs = op_F(op_B_fn(f), x);
        const double y = x / std::sqrt(1 + x * x);
        const double rhs = std::sqrt(1 + x * x) * op_F(f, y) / (1 + x * x);
        out.push_back(check("F o B = sqrt(1+x^2) B o F", k, x, lhs, rhs, tol));
    }

    // N_n = M_n o B, with f = (1 - y^2)^{n-1} h(y)
    for (int k = 0; k < N; ++k) {
        const int n = 1 + k % 2;
        RandFn h = S.fn();
        auto hv = [h](double y) { return h.jet(y, 0).value(); };
        const double lhs = momentum_N(
            [&](double y, double omy) { return std::pow(omy * (1 + y), n - 1) * hv(y); }, n);
        auto Bf = [&](double x) {
            const double q = 1 + x * x;
            return std::pow(q, -n) * hv(x / std::sqrt(q));
        };
        QuadOptions qo;
        qo.rel_tol = 1e-12;
        const double rhs = momentum_M(Bf, n, -2.0 * n, qo);
        out.push_back(check("N_n = M_n o B", k, double(n), lhs, rhs, tol));
    }

    // F o L_nu = L_nu o F
    for (int k = 0; k < N; ++k) {
        ExponentTuple nu = S.tuple(1 + k % 2);
        SmoothFn f = S.fn().fn();
        const double x = S.uniform(0.5, 5);
        out.push_back(check("F o L = L o F", k, x, op_F(op_L_fn(nu, f), x), op_L(nu, op_F_fn(f), x), tol));
    }

    // F[f](x) = x^{-2m} F[f_m](x)
    for (int k = 0; k < N; ++k) {
        const int m = 1 + k % 2;
        const double x = k < 4 ? (k < 2 ? 2.0 : 10.0) : S.uniform(0.5, 20);
        SmoothFn f = S.fn().fn();
        SmoothFn fm = lift_fm(f, m);
        out.push_back(check("F[f] = x^{-2m} F[f_m]", k, x, op_F(f, x), std::pow(x, -2 * m) * op_F(fm, x), tol));
    }

    // W[f o phi] = phi'^{n(n-1)/2} W[f](phi), phi = x + c x^2
    for (int k = 0; k < N; ++k) {
        const int n = 2 + k % 2;
        const double c = S.uniform(0.1, 0.5);
        SmoothFn phi = SmoothFn::from_jet(
            [c](double x, int o) {
                Jet v = Jet::variable(o, x);
                return v + v * v * c;
            },
            10, 0.0);
        std::vector<SmoothFn> fs, gs;
        for (int i = 0; i < n; ++i) {
            fs.push_back(S.fn().fn());
            gs.push_back(compose(fs.back(), phi));
        }
        const double x = S.uniform(0.1, 2);
        const double dphi = 1 + 2 * c * x;
        out.push_back(check("W[f o phi] = phi'^{n(n-1)/2} W[f] o phi", k, x, wronskian(gs, x),
                            std::pow(dphi, n * (n - 1) / 2) * wronskian(fs, phi(x)), tol));
    }

    // W[g f] = g^n W[f]
    for (int k = 0; k < N; ++k) {
        const int n = 2 + k % 2;
        SmoothFn g = S.fn().fn();
        std::vector<SmoothFn> fs, gs;
        for (int i = 0; i < n; ++i) {
            fs.push_back(S.fn().fn());
            gs.push_back(g * fs.back());
        }
        const double x = S.uniform(0.1, 2);
        out.push_back(check("W[g f] = g^n W[f]", k, x, wronskian(gs, x), std::pow(g(x), n) * wronskian(fs, x), tol));
    }

    // F[f](h) = sqrt2 h^2 T'(h^2), T' by differences of the period
    const PotentialCenter centres[] = {power_center({0, 2}), power_center({-1.0 / 3, 2}),
                                       loud_center(LoudParams(-1, 2))};
    for (int k = 0; k < N; ++k) {
        const PotentialCenter& P = centres[k % 3];
        const double frac = 0.1 + (0.999 - 0.1) * k / std::max(1, N - 1);
        const double h = frac * std::sqrt(P.h0());
        const double lhs = op_F([&](double z) { return P.f_family(z); }, h);
        const double rhs = std::numbers::sqrt2 * h * h * period_derivative_fd(P, h * h);
        out.push_back(check("F[f](h) = sqrt2 h^2 T'(h^2)", k, h, lhs, rhs, opt.formula_tol));
    }
    return out;
}

}  // namespace percrit
