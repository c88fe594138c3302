#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "percrit/errors.hpp"
#include "percrit/families.hpp"
#include "support.hpp"

using namespace percrit;
using testsupport::rel;

TEST_CASE("power family: closed-form data") {
    auto P = power_center({0, 1});
    CHECK(rel(P.h0(), 0.5) < 1e-15);
    CHECK(rel(P.x_right(), 1) < 1e-15);
    for (double x : {-0.7, 0.2, 0.9}) CHECK(rel(P.V(x), x * x / 2) < 1e-13);
    auto Q = power_center({0, 2});
    CHECK(rel(Q.h0(), 2.0 / 3) < 1e-15);
    CHECK(rel(Q.x_right(), std::sqrt(3.0) - 1) < 1e-15);
    CHECK(Q.x_left() == -1);
    CHECK(std::fabs(Q.energy_gap(Q.x_right())) < 1e-15);
    CHECK_THROWS_AS(power_center({2, 1}), DomainError);
    CHECK_THROWS_AS(power_center({-1, 2}), DomainError);
}

TEST_CASE("power family: centre conditions at random parameters") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uq(-0.9, 1), ud(0.1, 3);
    for (int i = 0; i < 20; ++i) {
        const double q = uq(rng), p = q + ud(rng);
        auto P = power_center({q, p});
        CAPTURE(q);
        CAPTURE(p);
        CHECK(std::fabs(P.V(0)) < 1e-15);
        CHECK(std::fabs(P.derivative(1, 0)) < 1e-13);
        CHECK(rel(P.derivative(2, 0), p - q) < 1e-12);
    }
}

TEST_CASE("power_f, its root p1, and the auxiliary g") {
    CHECK(rel(power_f(0), 1.375) < 1e-14);
    CHECK(std::fabs(find_p1() - 1.15685) < 5e-5);
    CHECK(std::fabs(power_f(find_p1())) < 1e-12);
    CHECK_THROWS_AS(power_f(-1.0 / 3), DomainError);
    auto g = [](double x) { return power_f(x / 3 - 1); };
    CHECK(std::fabs(g(2 + 1e-7) - (std::numbers::e - 1)) < 1e-5);
    bool dec = true;
    double prev = g(2 + 1e-6);
    for (double x = 2.1; x < 50; x += 0.1) {
        const double v = g(x);
        dec = dec && v < prev;
        prev = v;
    }
    CHECK(dec);
}

TEST_CASE("power boundary quantifiers: closed forms") {
    auto a = power_boundary_quantifiers({0, 2});
    CHECK(a.beta_l == -1);
    CHECK(a.b_l == 1);
    CHECK(a.beta_r == -1);
    const double xr = std::sqrt(3.0) - 1;
    CHECK(rel(a.b_r, std::pow(xr + 1, 2) - 1) < 1e-14);
    auto b = power_boundary_quantifiers({-1.0 / 3, 2});
    CHECK(rel(b.beta_l, -2.0 / 3) < 1e-15);
    CHECK(rel(b.b_l, 1.5) < 1e-15);
    // b_r = V'(x_r)
    auto P = power_center({-1.0 / 3, 2});
    CHECK(rel(b.b_r, P.derivative(1, P.x_right())) < 1e-12);
}

TEST_CASE("Loud family: parameters, h0, region") {
    LoudParams mu(-1, 2);
    CHECK(rel(mu.h0, 1.0 / 6) < 1e-15);
    CHECK(mu.p1 > 0);
    CHECK(mu.p1 < mu.p2);
    CHECK(std::fabs(mu.a * mu.p1 * mu.p1 + mu.b * mu.p1 + mu.c) < 1e-14);
    CHECK_THROWS_AS(LoudParams(0.5, 2), DomainError);
    CHECK_THROWS_AS(LoudParams(-3, 2), DomainError);
    CHECK_THROWS_AS(LoudParams(-0.5, 0.8), DomainError);
    auto L = loud_center(mu);
    CHECK(rel(L.x_left(), -0.5) < 1e-15);
    CHECK(rel(L.x_right(), mu.u_r) < 1e-15);
    CHECK(std::fabs(L.energy_gap(L.x_right())) < 1e-14);
}

TEST_CASE("Loud family: centre conditions at random parameters") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uF(1.2, 4), ut(0.05, 0.95);
    int built = 0;
    while (built < 10) {
        const double F = uF(rng), D = -F * ut(rng);
        if (std::fabs(F - 2) < 1e-3 && std::fabs(D + 0.5) < 1e-3) continue;
        auto L = loud_center(LoudParams(D, F));
        CHECK(std::fabs(L.V(0)) < 1e-14);
        CHECK(std::fabs(L.derivative(1, 0)) < 1e-12);
        CHECK(L.derivative(2, 0) > 0);
        ++built;
    }
}

TEST_CASE("Loud derivative table rows against finite differences") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uF(1.3, 3), ut(0.1, 0.9), us(0.05, 0.9);
    for (int i = 0; i < 20; ++i) {
        const double F = uF(rng), D = -F * ut(rng);
        LoudParams mu(D, F);
        const double lo = -1 / F, u = lo + us(rng) * (mu.u_r - lo);
        const double h = 1e-3 * std::min(u - lo, mu.u_r - u);
        for (int k = 1; k <= 4; ++k) {
            auto row = [&](double s) { return loud_vtable(mu, s).value[k - 1]; };
            CAPTURE(k);
            CHECK(rel(loud_vtable(mu, u).value[k], testsupport::fd1(row, u, h)) <= 1e-6);
        }
        // the table agrees with the centre's own derivatives
        auto L = loud_center(mu);
        for (int k = 0; k <= 4; ++k)
            CHECK(std::fabs(loud_vtable(mu, u).value[k] - L.derivative(k, u)) <=
                  1e-9 * (1 + std::fabs(L.derivative(k, u))));
    }
}

TEST_CASE("Loud L-map: root, monotonicity, derivative at -1") {
    CHECK(std::fabs(loud_find_L_root() + 0.5) < 1e-8);
    CHECK(std::fabs(loud_L_at_boundary(-0.5)) < 1e-13);
    bool dec = true;
    double prev = INFINITY;
    for (int i = 1; i <= 200; ++i) {
        const double D = -2 + 2.0 * i / 201;
        const double v = loud_L_at_boundary(D);
        dec = dec && v < prev;
        prev = v;
    }
    CHECK(dec);
    CHECK(rel(loud_L_at_boundary(-1), 1.0 / 36) < 1e-12);
    // the derivative with the zero relation substituted, and the true derivative
    CHECK(std::fabs(loud_L_derivative_substituted(-1) + 1.0 / 12) < 1e-12);
    CHECK(std::fabs(loud_L_derivative_fd(-1) + 11.0 / 144) < 1e-8);
    // the two agree at the actual zero
    CHECK(std::fabs(loud_L_derivative_substituted(-0.5) - loud_L_derivative_fd(-0.5)) < 1e-8);
}

TEST_CASE("Loud xi: closed form, numeric estimate, C2") {
    auto c = loud_xi_closed_form(2);
    CHECK(c.xi == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.nu == 0);
    CHECK(rel(c.beta_l, -1) < 1e-15);
    CHECK(c.beta_r == -1);
    CHECK(rel(c.alpha_l, 0.5) < 1e-15);
    CHECK(c.alpha_r == 0);
    CHECK(loud_nu(2) == 0);
    CHECK(rel(loud_nu(3), 0.5) < 1e-15);
    auto q = loud_xi_estimate(LoudParams(-1, 2));
    CHECK(std::fabs(q.alpha_hat - 0.5) <= 0.05);
    CHECK(std::fabs(loud_C2(LoudParams(-1, 2))) > 1e-6);
}

TEST_CASE("Loud inner-boundary exponent") {
    auto L = loud_center(LoudParams(-1, 2));
    auto est = estimate_energy_gap_quantifiers(L);
    // h0 - V ~ (D/(2-2F)) (F u + 1)^{(2F-2)/F}; quantifier convention flips the sign
    CHECK(std::fabs(est.left.alpha_hat + 1.0) < 1e-3);
    CHECK(std::fabs(est.right.alpha_hat + 1.0) < 1e-3);
}

TEST_CASE("harmonic centre") {
    auto H = harmonic_center();
    CHECK(!H.finite_energy());
    CHECK(rel(H.V(1.3), 1.3 * 1.3 / 2) < 1e-15);
}
