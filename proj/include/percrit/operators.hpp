#pragma once
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "percrit/jet.hpp"
#include "percrit/quadrature.hpp"

namespace percrit {

// A real function together with derivatives up to a declared order.
class SmoothFn {
public:
    using Deriv = std::function<double(int, double)>;

    SmoothFn() = default;
    SmoothFn(Deriv d, int max_order, double lo = 0.0,
             double hi = std::numeric_limits<double>::infinity());

    double operator()(double x) const { return d_(0, x); }
    double derivative(int k, double x) const;
    // Taylor coefficients f^(j)(x)/j!, j <= order
    Jet jet(double x, int order) const;
    int max_order() const { return order_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    static SmoothFn constant(double c);
    static SmoothFn power(double nu);  // x^nu on (0, inf)
    // from a jet-valued evaluator: j(x, order) returns the Taylor coefficients
    static SmoothFn from_jet(std::function<Jet(double, int)> j, int max_order, double lo = 0.0,
                             double hi = std::numeric_limits<double>::infinity());

    friend SmoothFn operator+(const SmoothFn& a, const SmoothFn& b);
    friend SmoothFn operator-(const SmoothFn& a, const SmoothFn& b);
    friend SmoothFn operator*(double s, const SmoothFn& a);
    friend SmoothFn operator*(const SmoothFn& a, const SmoothFn& b);  // Leibniz

private:
    Deriv d_;
    int order_ = 0;
    double lo_ = 0, hi_ = std::numeric_limits<double>::infinity();
};

// f(phi(x)) with derivatives by Faa di Bruno through jets
SmoothFn compose(const SmoothFn& f, const SmoothFn& phi);

struct ExponentTuple {
    std::vector<double> nu;
    int size() const { return int(nu.size()); }
    bool pairwise_distinct(double tol = 0.0) const;
};

// generic Wronskian W[f_0, ..., f_{n-1}](x), n <= 4
double wronskian(const std::vector<SmoothFn>& fs, double x);

struct OperatorOptions {
    QuadOptions quad{};
    // f may blow up at z = singularity > x; theta panels are graded toward pi/2 accordingly
    double singularity = std::numeric_limits<double>::infinity();
};

// int_0^{pi/2} f(x sin t) dt
double op_F(const SmoothFn& f, double x, const OperatorOptions& opt = {});
double op_F(const std::function<double(double)>& f, double x, const OperatorOptions& opt = {});
// int_0^{pi/2} f^(k)(x sin t) sin^k t dt
double op_F_derivative(const SmoothFn& f, int k, double x, const OperatorOptions& opt = {});
// x -> F[f](x) carrying derivatives up to f's order
SmoothFn op_F_fn(const SmoothFn& f, const OperatorOptions& opt = {});

// W[x^nu_1, ..., x^nu_n, f](x) / x^{sum(nu_i - i)}
double op_L(const ExponentTuple& nu, const SmoothFn& f, double x);
SmoothFn op_L_fn(const ExponentTuple& nu, const SmoothFn& f);

double psi(double nu, double x);
Jet psi_jet(double nu, double x, int order);
// (x(1-x^2))^{n(n+1)/2} W[psi_nu_1, ..., psi_nu_n, f](x) / prod psi_nu_i(x)
double op_D(const ExponentTuple& nu, const SmoothFn& f, double x);
SmoothFn op_D_fn(const ExponentTuple& nu, const SmoothFn& f);

// f(x/sqrt(1+x^2))/(1+x^2)
double op_B(const SmoothFn& f, double x);
SmoothFn op_B_fn(const SmoothFn& f);

struct MomentumVector {
    int m = 0;
    std::vector<double> values;
    std::vector<double> errors;
    std::vector<bool> converged;
};

// int_0^inf x^{2n-2} f(x) dx, f = O(x^tail_exponent)
double momentum_M(const std::function<double(double)>& f, int n, double tail_exponent,
                  const QuadOptions& opt = {});
MomentumVector momentum_vector(const std::function<double(double)>& f, int m, double tail_exponent,
                               const QuadOptions& opt = {});
// int_0^1 f(x) (x/sqrt(1-x^2))^{2n-2} / sqrt(1-x^2) dx
double momentum_N(const std::function<double(double)>& f, int n, const QuadOptions& opt = {});
// f(x, 1 - x): for integrands that need 1 - x to full relative precision
double momentum_N(const std::function<double(double, double)>& f, int n, const QuadOptions& opt = {});

struct LiftOptions {
    double x_max = 1e10;             // cached range of the inner integral
    bool vanishing_momentum = false;  // use -int_x^inf for large x
    double tail_exponent = -3;        // decay of f (for the vanishing-momentum mode)
    double grid_ratio = 1.189207115002721;  // 2^{1/4}
    double rel_tol = 1e-13;
};

// f_m = x^2 f_{m-1} + x int_0^x f_{m-1}, f_0 = f
SmoothFn lift_fm(const SmoothFn& f, int m, const LiftOptions& opt = {});

}  // namespace percrit
