#pragma once
#include <cmath>
#include <functional>
#include <random>

#include "percrit/operators.hpp"

namespace testsupport {

inline double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// five-point central difference
inline double fd1(const std::function<double(double)>& f, double x, double h) {
    return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

// a exp(b x) + c / (1 + d x^2), all derivatives through jets
inline percrit::SmoothFn random_smooth(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    const double a = 0.5 + 1.5 * u(rng), b = -1 + 1.3 * u(rng), c = -2 + 4 * u(rng), d = 0.2 + 1.8 * u(rng);
    return percrit::SmoothFn::from_jet(
        [=](double x, int o) {
            percrit::Jet e(o, std::exp(b * x));
            double f = 1;
            for (int k = 1; k <= o; ++k) {
                f *= b / k;
                e[k] = e[0] * f;
            }
            percrit::Jet v = percrit::Jet::variable(o, x);
            return e * a + percrit::Jet(o, c) / (v * v * d + 1.0);
        },
        10, -1e300);
}

}  // namespace testsupport
