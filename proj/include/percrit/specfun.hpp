#pragma once
// Special functions and the compensator family omega / Omega / G / K / b_m.
#include <cstddef>

namespace percrit {

double gamma(double x);
double digamma(double x);

// omega(x, a) = (x^(a+1) - 1)/(a+1), log x at a = -1
double omega(double x, double alpha);

// (1+a) G(a) = sqrt(pi) Gamma((3+a)/2) / Gamma(1+a/2), regular at a = -1
double gamma_ratio(double alpha);

// G(a) = int_0^{pi/2} sin^a; throws at a = -1
double script_g(double alpha);

// K(a) = G(a) - 1/(1+a), log 2 at a = -1
double script_k(double alpha);

// Omega(x, a) = (1+a) G(a) omega(x, a)
double omega_big(double x, double alpha);

// prod_{i=1}^m (a+2i)/(a+2i-1)
double b_factor(int m, double alpha);

double hyp2f1(double a, double b, double c, double z);
// 2F1 at z = 1 - w, for callers that know w to full relative precision
double hyp2f1_complement(double a, double b, double c, double w);

enum class TailBranch { Auto, Closed, Series };

// int_{asin(M/x)}^{pi/2} sin^a(t) dt, for 0 < M < x
double tail_integral(double alpha, double M, double x, TailBranch branch = TailBranch::Auto);

// Dirichlet eta function for integer k >= 1
double dirichlet_eta(int k);

}  // namespace percrit
