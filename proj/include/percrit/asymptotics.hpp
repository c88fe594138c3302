#pragma once
// Quantifier estimation and the compensator asymptotics of x^{2m+1} F[f](x).
#include <functional>
#include <string>
#include <vector>

#include "percrit/operators.hpp"

namespace percrit {

// a finite boundary b approached from one side, or +infinity
struct Boundary {
    bool at_infinity = true;
    double b = 0;
    int side = -1;  // -1: x < b (approach from the left), +1: x > b
    static Boundary infinity() { return {}; }
    static Boundary left_of(double b) { return {false, b, -1}; }
    static Boundary right_of(double b) { return {false, b, +1}; }
};

// x_k = x0 r^k at infinity; distances d_k = d0 / r^k at a finite boundary
struct Schedule {
    double start = 10;
    double ratio = 3.1622776601683795;  // sqrt 10
    int points = 15;
    std::vector<double> values() const;
};

struct QuantifierOptions {
    double residual_tol = 1e-3;
    double zero_tol = 1e-12;       // |ell| below this (relative to max |f|) counts as zero
    double compensator_slope_tol = 2e-2;
    double compensator_drift = 0.05;  // per decade
    bool throw_on_failure = true;
};

enum class QuantifierMode { Power, Compensator };

// convention: at infinity f / x^alpha -> ell, at finite b f |b - x|^alpha -> ell
struct Quantifier {
    Boundary boundary;
    double alpha_hat = 0;
    double ell_hat = 0;
    QuantifierMode mode = QuantifierMode::Power;
    double residual = 0;
    std::vector<double> samples;  // abscissae (x or distance to b)
    std::vector<double> slopes;   // local exponents between consecutive samples
};

Quantifier estimate_quantifier(const std::function<double(double)>& f, const Boundary& boundary,
                               const Schedule& schedule, const QuantifierOptions& opt = {});

struct CompensatorFit {
    double alpha = 0;
    double ell = 0;
    std::vector<double> xs;
    std::vector<double> ratio_trace;
    std::vector<double> deviations;  // |trace - 1|
    bool monotone = false;           // deviations non-increasing along the schedule
    bool accepted = false;           // monotone, final deviation within tolerance, improved since 1e4
};

struct TheoremOptions {
    double momentum_tol = 1e-8;
    double final_tol = 0.1;
    OperatorOptions op{};
    LiftOptions lift{};
};

// trace of x^{2m+1} F[f](x) / (a b_m(alpha) Omega(x, alpha + 2m)); for m >= 1 the
// operator is evaluated as x^{-2m} F[f_m] with the vanishing-momentum lift.
std::vector<CompensatorFit> verify_theorem_main(const std::function<SmoothFn(double)>& f_builder, double a, int m,
                                                const std::vector<double>& alpha_grid, const Schedule& schedule,
                                                const TheoremOptions& opt = {});

// trace of x^{2m+1} (L_nu o F)[f](x) / (a b_m(alpha) Omega(x, alpha + 2m)), where L_nu[f] ~ a x^alpha
CompensatorFit verify_theorem_main_gen(const ExponentTuple& nu, const SmoothFn& f, double a, double alpha, int m,
                                       const Schedule& schedule, const TheoremOptions& opt = {});

// test functions
// x (1 + x^2)^{(alpha-1)/2}
SmoothFn power_test_function(double alpha);
// x (1+x^2)^{(alpha-1)/2} - ((beta+1)/(alpha+1)) x (1+x^2)^{(beta-1)/2}, with vanishing M_1
SmoothFn calibrated_pair(double alpha, double beta);
// f with L_(2)[f] = x f' - 2 f = x (1+x^2)^{(alpha-1)/2}, f = -x^2 int_x^inf g / t^3; order 1
SmoothFn theorem_d_example(double alpha);

double fit_acceptance_deviation(const CompensatorFit& fit);
bool deviation_improves(const CompensatorFit& fit, double x_early = 1e4);

}  // namespace percrit
