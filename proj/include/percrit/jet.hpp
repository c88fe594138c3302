#pragma once
// Truncated Taylor series a_0 + a_1 t + ... + a_n t^n with fixed capacity.
// Coefficients, not derivatives: f^(k) = k! a_k.
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>

namespace percrit {

class Jet {
public:
    static constexpr int kCap = 16;

    Jet() = default;
    explicit Jet(int order, double c0 = 0.0) : n_(order) {
        assert(order >= 0 && order < kCap);
        a_.fill(0.0);
        a_[0] = c0;
    }
    // the identity t shifted by x0, i.e. the jet of x at x0
    static Jet variable(int order, double x0) {
        Jet j(order, x0);
        if (order >= 1) j.a_[1] = 1.0;
        return j;
    }

    int order() const { return n_; }
    double& operator[](int k) { return a_[k]; }
    double operator[](int k) const { return a_[k]; }
    double value() const { return a_[0]; }
    // k-th derivative at the expansion point
    double derivative(int k) const {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return a_[k] * f;
    }

    Jet& operator+=(const Jet& o) {
        for (int k = 0; k <= n_; ++k) a_[k] += o.a_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int k = 0; k <= n_; ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Jet& operator*=(double s) {
        for (int k = 0; k <= n_; ++k) a_[k] *= s;
        return *this;
    }
    Jet& operator+=(double s) { a_[0] += s; return *this; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator-(Jet a) { return a *= -1.0; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.n_);
        for (int k = 0; k <= a.n_; ++k) {
            double s = 0;
            for (int j = 0; j <= k; ++j) s += a.a_[j] * b.a_[k - j];
            r.a_[k] = s;
        }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r(a.n_);
        for (int k = 0; k <= a.n_; ++k) {
            double s = a.a_[k];
            for (int j = 1; j <= k; ++j) s -= b.a_[j] * r.a_[k - j];
            r.a_[k] = s / b.a_[0];
        }
        return r;
    }

    friend Jet sqrt(const Jet& v) {
        Jet u(v.n_);
        u.a_[0] = std::sqrt(v.a_[0]);
        for (int k = 1; k <= v.n_; ++k) {
            double s = v.a_[k];
            for (int j = 1; j < k; ++j) s -= u.a_[j] * u.a_[k - j];
            u.a_[k] = s / (2 * u.a_[0]);
        }
        return u;
    }

    // (c + t)^g expanded around t = 0, times scale
    static Jet power_of_linear(int order, double base, double slope, double g) {
        Jet r(order);
        double p = std::pow(base, g);
        r.a_[0] = p;
        // coefficients binom(g,k) slope^k base^(g-k)
        double c = p;
        for (int k = 1; k <= order; ++k) {
            c *= (g - (k - 1)) / k * slope / base;
            r.a_[k] = c;
        }
        return r;
    }

    // compose: this(s) where s is a jet with zero constant term
    Jet compose(const Jet& s) const {
        Jet r(n_, a_[n_]);
        for (int k = n_ - 1; k >= 0; --k) {
            r = r * s;
            r.a_[0] += a_[k];
        }
        return r;
    }

    // series reversion: given y(t) = a0 + a1 t + ..., return t(s) with y(t(s)) = a0 + s
    Jet revert() const {
        Jet t(n_);
        if (n_ == 0) return t;
        const double a1 = a_[1];
        t.a_[1] = 1.0 / a1;
        for (int m = 2; m <= n_; ++m) {
            // coefficient of s^m in sum_{k>=2} a_k t^k using t truncated at order m-1
            Jet tp = t;  // t^1
            double acc = 0;
            for (int k = 2; k <= m; ++k) {
                tp = tp * t;
                acc += a_[k] * tp.a_[m];
            }
            t.a_[m] = -acc / a1;
        }
        return t;
    }

    Jet truncated(int order) const {
        Jet r(order);
        for (int k = 0; k <= order && k <= n_; ++k) r.a_[k] = a_[k];
        return r;
    }

private:
    int n_ = 0;
    std::array<double, kCap> a_{};
};

}  // namespace percrit
