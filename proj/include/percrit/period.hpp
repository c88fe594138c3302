#pragma once
// Period function T(h), its derivative, and zero counts of T' near the outer boundary.
#include <functional>
#include <string>
#include <vector>

#include "percrit/operators.hpp"
#include "percrit/potential.hpp"

namespace percrit {

// T(h) = sqrt2 int_0^{pi/2} P[(g^{-1})'](sqrt(h) sin t) dt
double period(const PotentialCenter& P, double h, const QuadOptions& opt = {1e-13});
// sqrt2 int_{x-}^{x+} dx / sqrt(h - V), turning points removed by x = x+- -+ s^2
double period_direct(const PotentialCenter& P, double h, const QuadOptions& opt = {1e-13});

// T'(h) = F[f](sqrt h) / (sqrt2 h)
double period_derivative(const PotentialCenter& P, double h, const OperatorOptions& opt = {});
// Ridders-extrapolated central differences of period_direct; the step is scaled to the
// distance from 0 and h0. err receives the extrapolation error estimate.
double period_derivative_fd(const PotentialCenter& P, double h, double* err = nullptr);

enum class PeriodMethod { Direct, GSubstitution, Operator };
struct PeriodSample {
    double h, T, Tprime;
    PeriodMethod method;
};

struct ZeroCount {
    double h_lo = 0, h_hi = 0;
    int count = 0;
    std::vector<double> roots;
    double certification_gap = 0;  // min |T'| over grid points away from the roots
    double scale = 0;              // max |T'| over the grid
    int grid_resolution = 0;
    bool identically_zero = false;  // |T'| at roundoff level on the whole grid; count and roots left empty
};

// grid points in [h_lo, h_hi]: geometric in h0 - h when h0 is finite, else in h
std::vector<double> energy_grid(const PotentialCenter& P, double h_lo, double h_hi, int resolution);

ZeroCount count_critical_orbits(const PotentialCenter& P, double h_lo, double h_hi, int resolution);
// same result, grid evaluation spread over OpenMP threads
ZeroCount count_critical_orbits_parallel(const PotentialCenter& P, double h_lo, double h_hi, int resolution,
                                         int threads = 0);

// a cell of a parameter scan; window given as fractions (1 - 10^-a, 1 - 10^-b) of h0
struct ScanCell {
    double mu1 = 0, mu2 = 0;
    bool ok = false;
    std::string error;
    ZeroCount zc;
};
struct ScanWindow {
    double lo_gap = 1e-1;  // h_lo = h0 (1 - lo_gap)
    double hi_gap = 1e-5;  // h_hi = h0 (1 - hi_gap)
    int resolution = 400;
};

// 9-point grid mu_hat + {-d, 0, d}^2
std::vector<std::pair<double, double>> mu_grid9(double mu1, double mu2, double d = 0.035);

std::vector<ScanCell> scan_serial(const CenterBuilder& build, const std::vector<std::pair<double, double>>& mus,
                                  const ScanWindow& w);
// cells evaluated by an OpenMP worker pool; output order matches the input order
std::vector<ScanCell> scan_parallel(const CenterBuilder& build, const std::vector<std::pair<double, double>>& mus,
                                    const ScanWindow& w, int threads = 0);

struct WronskianTracePoint {
    double z;
    double wronskian;
    double normalized;
};
struct WronskianTrace {
    std::vector<WronskianTracePoint> points;
    double kappa = 0;
    bool tail_nonzero = false;
};

// W[psi_nu_1, ..., psi_nu_n, weight * T'(z^2 h0)](z) (1-z)^kappa / Omega(z/sqrt(1-z^2), eta + 2m),
// kappa = 1/2 - m + n(n+3)/2 + sum(nu)/2. The default weight sqrt2 h0 z^2 / sqrt(1-z^2) turns
// weight * T' into (1-z^2)^{-1/2} F[f~](z).
WronskianTrace wronskian_criterion_trace(const PotentialCenter& P, const ExponentTuple& nu, double eta, int m,
                                         const std::vector<double>& zs, const SmoothFn* weight = nullptr,
                                         const OperatorOptions& opt = {});

}  // namespace percrit
