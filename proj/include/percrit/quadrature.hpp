#pragma once
#include <cstddef>
#include <functional>

namespace percrit {

struct IntegrationResult {
    double value = 0;
    double abs_error_estimate = 0;
    std::size_t evaluations = 0;
    bool budget_exhausted = false;
    bool diverged = false;
    bool converged() const { return !budget_exhausted && !diverged; }
};

enum class QuadScheme { Auto, GaussKronrod, TanhSinh };

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0;  // absolute floor, combined as max(abs_tol, rel_tol * L1)
    std::size_t budget = 200000;
    QuadScheme scheme = QuadScheme::Auto;
};

using Integrand = std::function<double(double)>;
// second argument: signed distance to the nearest endpoint (a - x near a, b - x near b)
using ComplementIntegrand = std::function<double(double, double)>;

IntegrationResult integrate(const Integrand& f, double a, double b, double rel_tol = 1e-10);
IntegrationResult integrate(const Integrand& f, double a, double b, const QuadOptions& opt);

// double-exponential rule on [a,b], endpoint-singular integrands
IntegrationResult integrate_singular(const ComplementIntegrand& f, double a, double b,
                                     const QuadOptions& opt = {});

// int_a^inf f, with f(x) = O(x^tail_exponent_hint), hint < -1
IntegrationResult integrate_to_infinity(const Integrand& f, double a, double rel_tol,
                                        double tail_exponent_hint);
IntegrationResult integrate_to_infinity(const Integrand& f, double a, double tail_exponent_hint,
                                        const QuadOptions& opt);

}  // namespace percrit
