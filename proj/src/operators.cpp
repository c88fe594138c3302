#include "percrit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "percrit/errors.hpp"

namespace percrit {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

double falling(double nu, int r) {
    double p = 1;
    for (int i = 0; i < r; ++i) p *= nu - i;
    return p;
}

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// jet of the r-th derivative from a jet of order >= order + r
Jet derivative_jet(const Jet& J, int r, int order) {
    Jet d(order);
    for (int j = 0; j <= order; ++j) d[j] = J[j + r] * factorial(j + r) / factorial(j);
    return d;
}

Jet det_jet(std::vector<std::vector<Jet>> m) {
    const int n = int(m.size());
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Jet acc(m[0][0].order());
    for (int c = 0; c < n; ++c) {
        std::vector<std::vector<Jet>> minor;
        for (int r = 1; r < n; ++r) {
            std::vector<Jet> row;
            for (int k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(row);
        }
        Jet t = m[0][c] * det_jet(minor);
        if (c % 2 == 0) acc += t;
        else acc -= t;
    }
    return acc;
}

double det(std::vector<std::vector<double>> m) {
    std::vector<std::vector<Jet>> j(m.size());
    for (std::size_t r = 0; r < m.size(); ++r)
        for (double v : m[r]) j[r].push_back(Jet(0, v));
    return det_jet(j).value();
}

void check_order(const SmoothFn& f, int k) {
    if (k > f.max_order()) throw CapabilityError("derivative order exceeds the declared capability");
}

std::vector<double> theta_breaks(double x, double singularity) {
    std::vector<double> b{0.0};
    for (double s = 1.0; s < 0.5 * x; s *= 10) b.push_back(std::asin(s / x));
    // a blow-up at z = singularity just beyond x sits at distance ~ c^2 below pi/2 in t^2
    if (std::isfinite(singularity) && singularity > x) {
        const double c = std::sqrt(2 * (singularity - x) / x);
        std::vector<double> near;
        for (double t = 4 * c; t < 0.25; t *= 4) near.push_back(kHalfPi - t);
        for (auto it = near.rbegin(); it != near.rend(); ++it)
            if (*it > b.back()) b.push_back(*it);
    }
    b.push_back(kHalfPi);
    return b;
}

double integrate_theta(const std::function<double(double)>& g, double x, const OperatorOptions& opt) {
    auto br = theta_breaks(x, opt.singularity);
    double total = 0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        QuadOptions o = opt.quad;
        o.abs_tol = std::max(o.abs_tol, 1e-3 * o.rel_tol * std::fabs(total));
        total += integrate(g, br[i], br[i + 1], o).value;
    }
    return total;
}

}  // namespace

// ---------------------------------------------------------------- SmoothFn

SmoothFn::SmoothFn(Deriv d, int max_order, double lo, double hi)
    : d_(std::move(d)), order_(max_order), lo_(lo), hi_(hi) {}

double SmoothFn::derivative(int k, double x) const {
    if (k < 0) throw DomainError("negative derivative order");
    if (k > order_) throw CapabilityError("derivative order exceeds the declared capability");
    return d_(k, x);
}

Jet SmoothFn::jet(double x, int order) const {
    Jet j(order);
    for (int k = 0; k <= order; ++k) j[k] = derivative(k, x) / factorial(k);
    return j;
}

SmoothFn SmoothFn::constant(double c) {
    return SmoothFn([c](int k, double) { return k == 0 ? c : 0.0; }, Jet::kCap - 1,
                    -std::numeric_limits<double>::infinity());
}

SmoothFn SmoothFn::power(double nu) {
    return SmoothFn([nu](int k, double x) { return falling(nu, k) * std::pow(x, nu - k); }, Jet::kCap - 1);
}

SmoothFn SmoothFn::from_jet(std::function<Jet(double, int)> j, int max_order, double lo, double hi) {
    return SmoothFn([j](int k, double x) { return j(x, k).derivative(k); }, max_order, lo, hi);
}

SmoothFn operator+(const SmoothFn& a, const SmoothFn& b) {
    return SmoothFn([a, b](int k, double x) { return a.derivative(k, x) + b.derivative(k, x); },
                    std::min(a.max_order(), b.max_order()), std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

SmoothFn operator-(const SmoothFn& a, const SmoothFn& b) {
    return SmoothFn([a, b](int k, double x) { return a.derivative(k, x) - b.derivative(k, x); },
                    std::min(a.max_order(), b.max_order()), std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

SmoothFn operator*(double s, const SmoothFn& a) {
    return SmoothFn([a, s](int k, double x) { return s * a.derivative(k, x); }, a.max_order(), a.lo(), a.hi());
}

SmoothFn operator*(const SmoothFn& a, const SmoothFn& b) {
    return SmoothFn(
        [a, b](int k, double x) {
            double s = 0, c = 1;
            for (int j = 0; j <= k; ++j) {
                s += c * a.derivative(j, x) * b.derivative(k - j, x);
                c = c * (k - j) / (j + 1);
            }
            return s;
        },
        std::min(a.max_order(), b.max_order()), std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

SmoothFn compose(const SmoothFn& f, const SmoothFn& phi) {
    auto jf = [f, phi](double x, int order) {
        Jet p = phi.jet(x, order);
        Jet F = f.jet(p[0], order);
        p[0] = 0;
        return F.compose(p);
    };
    return SmoothFn::from_jet(jf, std::min(f.max_order(), phi.max_order()), phi.lo(), phi.hi());
}

bool ExponentTuple::pairwise_distinct(double tol) const {
    for (std::size_t i = 0; i < nu.size(); ++i)
        for (std::size_t j = i + 1; j < nu.size(); ++j)
            if (std::fabs(nu[i] - nu[j]) <= tol) return false;
    return true;
}

double wronskian(const std::vector<SmoothFn>& fs, double x) {
    const int n = int(fs.size());
    if (n == 0) return 1.0;
    if (n > 4) throw CapabilityError("wronskian: at most 4 functions");
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) m[r][c] = fs[c].derivative(r, x);
    return det(m);
}

// ---------------------------------------------------------------- F

double op_F(const std::function<double(double)>& f, double x, const OperatorOptions& opt) {
    if (!(x > 0)) throw DomainError("op_F: x must be positive");
    return integrate_theta([&](double t) { return f(x * std::sin(t)); }, x, opt);
}

double op_F(const SmoothFn& f, double x, const OperatorOptions& opt) {
    return op_F([&](double s) { return f(s); }, x, opt);
}

double op_F_derivative(const SmoothFn& f, int k, double x, const OperatorOptions& opt) {
    check_order(f, k);
    if (k == 0) return op_F(f, x, opt);
    if (!(x > 0)) throw DomainError("op_F_derivative: x must be positive");
    return integrate_theta(
        [&](double t) {
            double s = std::sin(t);
            return f.derivative(k, x * s) * std::pow(s, k);
        },
        x, opt);
}

SmoothFn op_F_fn(const SmoothFn& f, const OperatorOptions& opt) {
    return SmoothFn([f, opt](int k, double x) { return op_F_derivative(f, k, x, opt); }, f.max_order());
}

// ---------------------------------------------------------------- L and D

namespace {

void check_tuple(const ExponentTuple& nu) {
    if (nu.size() > 3) throw CapabilityError("exponent tuples are limited to n <= 3");
    if (!nu.pairwise_distinct()) throw DomainError("exponents must be pairwise distinct");
}

// jet in t of (x+t)^r f^(r)(x+t)
Jet scaled_derivative_jet(const Jet& F, double x, int r, int order) {
    Jet d = derivative_jet(F, r, order);
    Jet xr = Jet::power_of_linear(order, x, 1.0, r);
    return xr * d;
}

Jet op_L_jet(const ExponentTuple& nu, const SmoothFn& f, double x, int order) {
    check_tuple(nu);
    const int n = nu.size();
    check_order(f, n + order);
    Jet F = f.jet(x, n + order);
    std::vector<std::vector<Jet>> m(n + 1, std::vector<Jet>(n + 1));
    for (int r = 0; r <= n; ++r) {
        for (int i = 0; i < n; ++i) m[r][i] = Jet(order, falling(nu.nu[i], r));
        m[r][n] = scaled_derivative_jet(F, x, r, order);
    }
    return det_jet(m);
}

// jet of x(1-x^2) at x
Jet weight_jet(double x, int order) {
    Jet v = Jet::variable(order, x);
    return v * (Jet(order, 1.0) - v * v);
}

Jet op_D_jet(const ExponentTuple& nu, const SmoothFn& f, double x, int order) {
    check_tuple(nu);
    if (!(x > 0 && x < 1)) throw DomainError("op_D: x must lie in (0,1)");
    const int n = nu.size();
    check_order(f, n + order);
    Jet F = f.jet(x, n + order);
    Jet w = weight_jet(x, order);
    Jet wr(order, 1.0);
    std::vector<Jet> P(n);
    for (int i = 0; i < n; ++i) P[i] = psi_jet(nu.nu[i], x, n + order);
    std::vector<std::vector<Jet>> m(n + 1, std::vector<Jet>(n + 1));
    for (int r = 0; r <= n; ++r) {
        for (int i = 0; i < n; ++i) m[r][i] = wr * derivative_jet(P[i], r, order) / P[i].truncated(order);
        m[r][n] = wr * derivative_jet(F, r, order);
        wr = wr * w;
    }
    return det_jet(m);
}

}  // namespace

double op_L(const ExponentTuple& nu, const SmoothFn& f, double x) {
    if (!(x > 0)) throw DomainError("op_L: x must be positive");
    if (nu.size() == 0) return f(x);
    return op_L_jet(nu, f, x, 0).value();
}

SmoothFn op_L_fn(const ExponentTuple& nu, const SmoothFn& f) {
    check_tuple(nu);
    return SmoothFn::from_jet([nu, f](double x, int order) { return op_L_jet(nu, f, x, order); },
                              f.max_order() - nu.size(), f.lo(), f.hi());
}

double psi(double nu, double x) { return std::pow(x, nu) * std::pow(1 - x * x, -1 - nu / 2); }

Jet psi_jet(double nu, double x, int order) {
    const double e = -1 - nu / 2;
    return Jet::power_of_linear(order, x, 1.0, nu) * Jet::power_of_linear(order, 1 - x, -1.0, e) *
           Jet::power_of_linear(order, 1 + x, 1.0, e);
}

double op_D(const ExponentTuple& nu, const SmoothFn& f, double x) {
    if (nu.size() == 0) return f(x);
    return op_D_jet(nu, f, x, 0).value();
}

SmoothFn op_D_fn(const ExponentTuple& nu, const SmoothFn& f) {
    check_tuple(nu);
    return SmoothFn::from_jet([nu, f](double x, int order) { return op_D_jet(nu, f, x, order); },
                              f.max_order() - nu.size(), 0.0, 1.0);
}

// ---------------------------------------------------------------- B

double op_B(const SmoothFn& f, double x) {
    if (!(x >= 0)) throw DomainError("op_B: x must be nonnegative");
    const double q = 1 + x * x;
    return f(x / std::sqrt(q)) / q;
}

SmoothFn op_B_fn(const SmoothFn& f) {
    auto jf = [f](double x, int order) {
        Jet v = Jet::variable(order, x);
        Jet q = v * v + 1.0;
        Jet inv_sqrt = Jet(order, 1.0) / sqrt(q);
        Jet phi = v * inv_sqrt;
        Jet F = f.jet(phi[0], order);
        phi[0] = 0;
        return F.compose(phi) * (inv_sqrt * inv_sqrt);
    };
    return SmoothFn::from_jet(jf, f.max_order());
}

// ---------------------------------------------------------------- momenta

double momentum_M(const std::function<double(double)>& f, int n, double tail_exponent, const QuadOptions& opt) {
    if (n < 1) throw DomainError("momentum_M: n must be positive");
    const double e = 2 * n - 2 + tail_exponent;
    if (!(e < -1)) throw DivergenceError("momentum_M: integrand is not integrable at infinity");
    auto g = [&](double x) { return std::pow(x, 2 * n - 2) * f(x); };
    auto r = integrate_to_infinity(g, 0.0, e, opt);
    if (r.diverged) throw DivergenceError("momentum_M: empirical tail slope is not below -1");
    return r.value;
}

MomentumVector momentum_vector(const std::function<double(double)>& f, int m, double tail_exponent,
                               const QuadOptions& opt) {
    MomentumVector mv;
    mv.m = m;
    for (int n = 1; n <= m; ++n) {
        const double e = 2 * n - 2 + tail_exponent;
        auto g = [&](double x) { return std::pow(x, 2 * n - 2) * f(x); };
        if (!(e < -1)) {
            mv.values.push_back(std::numeric_limits<double>::quiet_NaN());
            mv.errors.push_back(std::numeric_limits<double>::infinity());
            mv.converged.push_back(false);
            continue;
        }
        auto r = integrate_to_infinity(g, 0.0, e, opt);
        mv.values.push_back(r.value);
        mv.errors.push_back(r.abs_error_estimate);
        mv.converged.push_back(r.converged());
    }
    return mv;
}

double momentum_N(const std::function<double(double, double)>& f, int n, const QuadOptions& opt) {
    if (n < 1) throw DomainError("momentum_N: n must be positive");
    auto g = [&](double x, double xc) {
        const double omx = xc > 0 ? xc : 1 - x;
        const double s = std::sqrt(omx * (1 + x));
        return f(x, omx) * std::pow(x / s, 2 * n - 2) / s;
    };
    auto r = integrate_singular(g, 0.0, 1.0, opt);
    // integrands that only see x carry rounding noise at 1; accept anything the rule
    // itself reports as near-converged
    if (!std::isfinite(r.value) || r.abs_error_estimate > 1e-6 * std::fabs(r.value) + opt.abs_tol)
        throw DivergenceError("momentum_N: integral does not converge");
    return r.value;
}

double momentum_N(const std::function<double(double)>& f, int n, const QuadOptions& opt) {
    return momentum_N([&f](double x, double) { return f(x); }, n, opt);
}

// ---------------------------------------------------------------- lift

namespace {

class LiftCache {
public:
    LiftCache(SmoothFn g, const LiftOptions& opt, double tail) : g_(std::move(g)), opt_(opt), tail_(tail) {
        grid_.push_back(0.0);
        for (double s = kFirst; s < opt_.x_max * opt_.grid_ratio; s *= opt_.grid_ratio) grid_.push_back(s);
        head_.assign(grid_.size(), 0.0);
        for (std::size_t j = 1; j < grid_.size(); ++j) head_[j] = head_[j - 1] + piece(grid_[j - 1], grid_[j]);
        if (opt_.vanishing_momentum) {
            tailc_.assign(grid_.size(), 0.0);
            QuadOptions o;
            o.rel_tol = opt_.rel_tol;
            auto r = integrate_to_infinity([this](double x) { return g_(x); }, grid_.back(), tail_, o);
            tailc_.back() = r.value;
            for (std::size_t j = grid_.size() - 1; j-- > 0;) tailc_[j] = tailc_[j + 1] + piece(grid_[j], grid_[j + 1]);
        }
    }

    // int_0^x g, or -int_x^inf g in the vanishing-momentum mode
    double I(double x) const {
        if (x <= 0) return 0;
        if (x > grid_.back()) {
            if (!opt_.vanishing_momentum) return head_.back() + piece(grid_.back(), x);
            QuadOptions o;
            o.rel_tol = opt_.rel_tol;
            return -integrate_to_infinity([this](double s) { return g_(s); }, x, tail_, o).value;
        }
        auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
        std::size_t j = std::size_t(it - grid_.begin()) - 1;
        if (opt_.vanishing_momentum && x >= 1.0) {
            // -int_x^inf = -(tail_j - int_{s_j}^x)
            return -(tailc_[j] - local(grid_[j], x));
        }
        return head_[j] + local(grid_[j], x);
    }

    const SmoothFn& g() const { return g_; }

private:
    static constexpr double kFirst = 1e-3;

    double piece(double a, double b) const {
        if (a == b) return 0;
        QuadOptions o;
        o.rel_tol = opt_.rel_tol;
        o.scheme = QuadScheme::GaussKronrod;
        o.budget = 20000;
        return integrate([this](double s) { return g_(s); }, a, b, o).value;
    }

    // fixed 20-point Gauss-Legendre: cells are short relative to their distance from 0
    double local(double a, double b) const {
        if (a == b) return 0;
        return boost::math::quadrature::gauss<double, 20>::integrate([this](double s) { return g_(s); }, a, b);
    }

    SmoothFn g_;
    LiftOptions opt_;
    double tail_;
    std::vector<double> grid_, head_, tailc_;
};

SmoothFn lift_once(const SmoothFn& g, const LiftOptions& opt, double tail) {
    auto cache = std::make_shared<const LiftCache>(g, opt, tail);
    return SmoothFn(
        [cache](int k, double x) {
            const SmoothFn& g = cache->g();
            // d^k (x^2 g) + d^k (x I), with I^(j) = g^(j-1)
            double s = x * x * g.derivative(k, x);
            if (k >= 1) s += 2.0 * k * x * g.derivative(k - 1, x);
            if (k >= 2) s += double(k) * (k - 1) * g.derivative(k - 2, x);
            auto Ij = [&](int j) { return j == 0 ? cache->I(x) : g.derivative(j - 1, x); };
            s += x * Ij(k);
            if (k >= 1) s += k * Ij(k - 1);
            return s;
        },
        g.max_order(), 0.0, g.hi());
}

}  // namespace

SmoothFn lift_fm(const SmoothFn& f, int m, const LiftOptions& opt) {
    if (m < 0) throw DomainError("lift_fm: m must be nonnegative");
    SmoothFn cur = f;
    for (int i = 0; i < m; ++i) cur = lift_once(cur, opt, opt.tail_exponent + 2 * i);
    return cur;
}

}  // namespace percrit
