#pragma once
// Potential centres V(x) = c0 + sum_i c_i (1 + a_i x)^{gamma_i} with a non-degenerate
// minimum at 0, the conjugating map g = sgn(x) sqrt(V) and its inverse.
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "percrit/jet.hpp"

namespace percrit {

struct PowerTerm {
    double c;      // coefficient
    double a;      // slope of the base 1 + a x
    double gamma;  // exponent
};

class PotentialCenter {
public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    PotentialCenter(double c0, std::vector<PowerTerm> terms, double x_left, double x_right, double h0,
                    std::string label = "");

    double V(double x) const;
    // k-th derivative, any k >= 0
    double derivative(int k, double x) const;
    // Taylor coefficients of V at x up to the given order
    Jet jet(double x, int order) const;
    // h0 - V(x) without forming h0 - (h0 - small)
    double energy_gap(double x) const;

    double x_left() const { return xl_; }
    double x_right() const { return xr_; }
    double h0() const { return h0_; }
    bool finite_energy() const { return h0_ < kInf; }
    const std::string& label() const { return label_; }
    // |x| below this uses the Taylor expansion at the centre
    double center_radius() const { return delta0_; }

    double g(double x) const;
    Jet g_jet(double x, int order) const;

    double g_inverse(double z) const;
    // (g^{-1})^{(order)}(z), order 0..12
    double g_inverse_derivative(double z, int order) const;
    // Taylor coefficients of g^{-1} at z
    Jet g_inverse_jet(double z, int order) const;

    // f(z) = z (g^{-1})''(z) - z (g^{-1})''(-z)
    double f_family(double z) const;
    double f_family_derivative(int k, double z) const;
    Jet f_family_jet(double z, int order) const;

    // f at z sqrt(h0), z in (0,1); finite energy only
    double rescaled_f_family(double z) const;
    double rescaled_f_derivative(int k, double z) const;

private:
    double c0_;
    std::vector<PowerTerm> terms_;
    double xl_, xr_, h0_;
    std::string label_;
    std::vector<double> taylor_;  // V coefficients at 0, taylor_[0] = taylor_[1] = 0
    double delta0_;
    double gp0_;  // g'(0)

    Jet closed_jet(double x, int order) const;
    Jet w_jet(double x, int order) const;  // V/x^2 from the centre expansion
    void check_z(double z) const;
};

struct HypothesisHReport {
    int max_order = 6;  // derivative orders checked: 0..max_order
    bool derivatives_continuous = true;
    bool x_right_continuous = true;
    bool x_left_continuous = true;
    bool h0_continuous = true;
    double max_jump = 0;  // largest relative change under a 1e-7 parameter nudge (before refinement)
    int points_checked = 0;
    bool ok() const { return derivatives_continuous && x_right_continuous && x_left_continuous && h0_continuous; }
};

using CenterBuilder = std::function<PotentialCenter(double, double)>;

HypothesisHReport hypothesis_h_report(const CenterBuilder& build,
                                      const std::vector<std::pair<double, double>>& mu_grid,
                                      double tol = 1e-4);

}  // namespace percrit
