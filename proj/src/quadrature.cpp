#include "percrit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "percrit/errors.hpp"

namespace percrit {

namespace {

using GK21 = boost::math::quadrature::gauss_kronrod<double, 21>;
constexpr std::size_t kPanelCost = 21;

struct Panel {
    double a, b, value, err, l1;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <class F>
Panel gk_panel(F& f, double a, double b) {
    double err = 0, l1 = 0;
    double v = GK21::integrate(f, a, b, 0, 0.0, &err, &l1);
    if (std::isnan(v)) throw DomainError("integrand returned NaN");
    if (!std::isfinite(v)) err = std::numeric_limits<double>::infinity();
    return {a, b, v, err, l1};
}

IntegrationResult gauss_kronrod_adaptive(const Integrand& f, double a, double b, const QuadOptions& opt) {
    IntegrationResult r;
    std::size_t n = 0;
    auto counted = [&](double x) {
        ++n;
        return f(x);
    };
    if (opt.budget < kPanelCost) {
        r.budget_exhausted = true;
        return r;
    }
    std::priority_queue<Panel> heap;
    Panel p0 = gk_panel(counted, a, b);
    heap.push(p0);
    double total = p0.value, err = p0.err, l1 = p0.l1;
    auto target = [&] {
        return std::max({opt.abs_tol, opt.rel_tol * std::fabs(total),
                         4 * std::numeric_limits<double>::epsilon() * l1});
    };
    while (err > target()) {
        if (n + 2 * kPanelCost > opt.budget) {
            r.budget_exhausted = true;
            break;
        }
        Panel w = heap.top();
        heap.pop();
        double m = 0.5 * (w.a + w.b);
        if (!(m > w.a && m < w.b) || (w.b - w.a) < 1e-13 * (b - a)) {  // cannot split further
            heap.push(w);
            r.budget_exhausted = true;
            break;
        }
        Panel l = gk_panel(counted, w.a, m), rr = gk_panel(counted, m, w.b);
        total += l.value + rr.value - w.value;
        err += l.err + rr.err - w.err;
        l1 += l.l1 + rr.l1 - w.l1;
        heap.push(l);
        heap.push(rr);
        if (heap.size() % 64 == 0) {  // refresh sums against drift
            std::vector<Panel> all;
            total = err = l1 = 0;
            while (!heap.empty()) {
                all.push_back(heap.top());
                heap.pop();
            }
            for (auto& q : all) {
                total += q.value;
                err += q.err;
                l1 += q.l1;
                heap.push(q);
            }
        }
    }
    r.value = total;
    r.abs_error_estimate = std::max(0.0, err);
    r.evaluations = n;
    return r;
}

std::size_t refinements_for(std::size_t budget) {
    std::size_t r = 4;
    while (r < 15 && 20 * (std::size_t(1) << (r + 1)) <= budget) ++r;
    return r;
}

template <bool Complement, class F>
IntegrationResult tanh_sinh_impl(const F& f, double a, double b, const QuadOptions& opt) {
    IntegrationResult r;
    std::size_t n = 0;
    auto counted = [&] {
        if constexpr (Complement) {
            return [&](double x, double xc) {
                ++n;
                double v = f(x, xc);
                if (std::isnan(v)) throw DomainError("integrand returned NaN");
                return v;
            };
        } else {
            return [&](double x) {
                ++n;
                double v = f(x);
                if (std::isnan(v)) throw DomainError("integrand returned NaN");
                return v;
            };
        }
    }();
    boost::math::quadrature::tanh_sinh<double> ts(refinements_for(opt.budget));
    double err = 0, l1 = 0;
    double v = ts.integrate(counted, a, b, opt.rel_tol, &err, &l1);
    r.value = v;
    r.abs_error_estimate = std::max(err, 4 * std::numeric_limits<double>::epsilon() * l1);
    r.evaluations = n;
    double target = std::max({opt.abs_tol, opt.rel_tol * std::fabs(v), 4 * std::numeric_limits<double>::epsilon() * l1});
    r.budget_exhausted = err > target;
    return r;
}

}  // namespace

IntegrationResult integrate(const Integrand& f, double a, double b, double rel_tol) {
    QuadOptions o;
    o.rel_tol = rel_tol;
    return integrate(f, a, b, o);
}

IntegrationResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt) {
    if (a == b) return {};
    if (a > b) {
        auto r = integrate(f, b, a, opt);
        r.value = -r.value;
        return r;
    }
    if (opt.scheme == QuadScheme::TanhSinh)
        return tanh_sinh_impl<false>(f, a, b, opt);
    QuadOptions o1 = opt;
    if (opt.scheme == QuadScheme::Auto) o1.budget = opt.budget / 4;
    auto r = gauss_kronrod_adaptive(f, a, b, o1);
    if (opt.scheme == QuadScheme::GaussKronrod || r.converged()) return r;
    // fall back to the double-exponential rule with what is left of the budget
    QuadOptions o2 = opt;
    o2.budget = opt.budget > r.evaluations ? opt.budget - r.evaluations : 0;
    if (o2.budget < 200) return r;
    auto t = tanh_sinh_impl<false>(f, a, b, o2);
    t.evaluations += r.evaluations;
    if (t.abs_error_estimate < r.abs_error_estimate) return t;
    r.evaluations = t.evaluations;
    return r;
}

IntegrationResult integrate_singular(const ComplementIntegrand& f, double a, double b, const QuadOptions& opt) {
    if (!(a < b)) throw DomainError("integrate_singular: need a < b");
    return tanh_sinh_impl<true>(f, a, b, opt);
}

IntegrationResult integrate_to_infinity(const Integrand& f, double a, double rel_tol, double hint) {
    QuadOptions o;
    o.rel_tol = rel_tol;
    return integrate_to_infinity(f, a, hint, o);
}

IntegrationResult integrate_to_infinity(const Integrand& f, double a, double hint, const QuadOptions& opt) {
    if (!(hint < -1)) throw DivergenceError("integrate_to_infinity: tail exponent hint must be < -1");
    IntegrationResult r;
    const double L = std::max(1.0, std::fabs(a));
    double lo = a, width = L;
    double total = 0, err = 0;
    std::size_t used = 0;
    const double x_cap = a + L * 1e15;
    double X = a;
    for (;;) {
        double hi = lo + width;
        QuadOptions o = opt;
        o.budget = opt.budget > used + 3 ? opt.budget - used - 3 : 0;
        o.abs_tol = std::max(opt.abs_tol, 1e-3 * opt.rel_tol * std::fabs(total));
        auto p = integrate(f, lo, hi, o);
        used += p.evaluations;
        total += p.value;
        err += p.abs_error_estimate;
        if (p.budget_exhausted) {
            r.budget_exhausted = true;
            X = hi;
            break;
        }
        X = hi;
        lo = hi;
        width *= 2;
        double fx = f(X);
        ++used;
        double tail_mag = std::fabs(fx) * (X - a + L);
        double scale = std::max(std::fabs(total), 1e-300);
        if (tail_mag <= 1e-3 * opt.rel_tol * scale && X - a > 8 * L) break;
        if (X >= x_cap) break;
    }
    // power-law tail beyond X
    const double xh = X / 2;
    double fx = f(X), fh = f(xh);
    used += 2;
    double tail = 0, tail_err = 0;
    if (fx != 0 && fh != 0 && (fx > 0) == (fh > 0) && X > 0 && xh > 0) {
        double slope = std::log(fx / fh) / std::log(X / xh);
        tail = X * fx / (-1 - hint);
        if (slope >= -1) {
            r.diverged = true;
        } else {
            double alt = X * fx / (-1 - slope);
            tail_err = std::fabs(alt - tail);
        }
    }
    r.value = total + tail;
    r.abs_error_estimate = err + tail_err + 1e-3 * std::fabs(tail);
    r.evaluations = used;
    return r;
}

}  // namespace percrit
