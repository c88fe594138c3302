#pragma once
// The power-like family V = int_1^{x+1} (u^p - u^q) du and the dehomogenized
// Loud centres in potential form.
#include <array>

#include "percrit/asymptotics.hpp"
#include "percrit/potential.hpp"

namespace percrit {

PotentialCenter harmonic_center();  // V = x^2/2

struct PowerParams {
    double q, p;
    double h0() const;
    double x_left() const { return -1.0; }
    double x_right() const;
};

PotentialCenter power_center(const PowerParams& mu);

// ((3+3p)/2)^{(3+3p)/(1+3p)} - 3p - 2
double power_f(double p);
double find_p1();

struct BoundaryQuantifiers {
    double beta_l, b_l, beta_r, b_r;
};
BoundaryQuantifiers power_boundary_quantifiers(const PowerParams& mu);

struct LoudParams {
    double D, F;
    LoudParams(double D, double F);  // checks membership in {F>1, D<0, D+F>0}
    double a, b, c;                  // q(x) = a x^2 + b x + c
    double p1, p2;
    double h0;
    double u_r;
    // coefficients of V = h0 - A w^{2-2/F} - B w^{2-1/F} - C w^2, w = F u + 1
    double A() const;
    double B() const;
    double C() const;
};

PotentialCenter loud_center(const LoudParams& mu);

// the z-polynomials of the derivative table, z = (F u + 1)^{-1/F}
struct VTable {
    std::array<double, 5> poly;   // V0..V4 at z
    std::array<double, 5> value;  // V, V', V'', V''', V'''' at u
};
VTable loud_vtable(const LoudParams& mu, double u);

// z^{-2F} V1^2 + ((D-1)/6) V2 at z = 1 - p1
double loud_L(double z, const LoudParams& mu);
double loud_L_at_boundary(double D, double F = 2.0);
double loud_find_L_root(double F = 2.0);
// central differences of D -> L(1 - p1, (D, F))
double loud_L_derivative_fd(double D, double F = 2.0, double step = 1e-4);
// the derivative with the zero relation z^{-2F} = (1-D) V2 / (6 V1^2) substituted
double loud_L_derivative_substituted(double D, double F = 2.0);

struct LoudXiChain {
    double beta_l, beta_r, alpha_l, alpha_r, nu, xi;
};
LoudXiChain loud_xi_closed_form(double F);
double loud_nu(double F);  // (F-2)/(F-1)
double loud_C2(const LoudParams& mu);
// quantifier at z = 1 of (D_nu o P)[rescaled f], nu = (F-2)/(F-1); compare alpha_hat with xi
Quantifier loud_xi_estimate(const LoudParams& mu, const Schedule& schedule = {0.1, 3.1622776601683795, 11});

// exponent of h0 - V at each end of the annulus (quantifier convention), estimated numerically
struct BoundaryEstimates {
    Quantifier left, right;
};
BoundaryEstimates estimate_energy_gap_quantifiers(const PotentialCenter& P,
                                                  const Schedule& schedule = {0.1, 3.1622776601683795, 15});

}  // namespace percrit
