#include "percrit/period.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <omp.h>

#include "percrit/errors.hpp"
#include "percrit/specfun.hpp"

namespace percrit {

namespace {

const double kSqrt2 = std::numbers::sqrt2;

void check_energy(const PotentialCenter& P, double h) {
    if (!(h > 0 && h < P.h0())) throw OutOfAnnulusError("energy outside (0, h0)");
}

// int_0^{sqrt(|xt|)} 2 / sqrt(Q(s)) ds where h - V(xt - dir s^2) = s^2 Q(s)
double half_period(const PotentialCenter& P, double h, double xt, double dir, const QuadOptions& opt) {
    constexpr int kOrder = Jet::kCap - 1;
    const Jet c = P.jet(xt, kOrder);
    // the expansion at xt converges up to the nearest end of the domain of V
    double reach = std::fabs(xt);
    if (std::isfinite(P.x_left())) reach = std::min(reach, xt - P.x_left());
    const double s_taylor2 = 0.1 * reach;
    auto Q = [&](double s) {
        const double s2 = s * s;
        if (s2 <= s_taylor2) {
            // -sum_k c_k (-dir s^2)^k / s^2, with p = (-s^2)^{k-1}
            double acc = 0, p = 1;
            for (int k = 1; k <= kOrder; ++k) {
                acc += c[k] * p * (k % 2 == 1 ? dir : 1.0);
                p *= -s2;
            }
            return acc;
        }
        return (h - P.V(xt - dir * s2)) / s2;
    };
    auto r = integrate([&](double s) { return 2 / std::sqrt(Q(s)); }, 0.0, std::sqrt(std::fabs(xt)), opt);
    return r.value;
}

double ridders(const std::function<double(double)>& f, double x, double step, double* err_out) {
    constexpr int kN = 10;
    constexpr double kCon = 1.4, kCon2 = kCon * kCon;
    double a[kN][kN];
    double hh = step, err = 1e300, ans = 0;
    a[0][0] = (f(x + hh) - f(x - hh)) / (2 * hh);
    for (int i = 1; i < kN; ++i) {
        hh /= kCon;
        a[0][i] = (f(x + hh) - f(x - hh)) / (2 * hh);
        double fac = kCon2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1);
            fac *= kCon2;
            double e = std::max(std::fabs(a[j][i] - a[j - 1][i]), std::fabs(a[j][i] - a[j - 1][i - 1]));
            if (e <= err) {
                err = e;
                ans = a[j][i];
            }
        }
        if (std::fabs(a[i][i] - a[i - 1][i - 1]) >= 2 * err) break;
    }
    if (err_out) *err_out = err;
    return ans;
}

// sign counting tolerates a looser quadrature: near h0 the integrand of F carries ~1e-9
// relative roundoff from g^{-1} at the boundary, far above the default target
double count_tp(const PotentialCenter& P, double h) {
    OperatorOptions o;
    o.quad.rel_tol = 1e-7;
    return period_derivative(P, h, o);
}

ZeroCount finish_count(const PotentialCenter& P, const std::vector<double>& hs, const std::vector<double>& d,
                       double h_lo, double h_hi) {
    ZeroCount zc;
    zc.h_lo = h_lo;
    zc.h_hi = h_hi;
    zc.grid_resolution = int(hs.size());
    for (double v : d) zc.scale = std::max(zc.scale, std::fabs(v));
    // T' at roundoff level against T / h: an isochronous window, sign changes are noise
    if (!hs.empty()) {
        const double hm = hs[hs.size() / 2];
        if (zc.scale <= 1e-6 * period(P, hm) / hm) {
            zc.identically_zero = true;
            zc.certification_gap = 0;
            return zc;
        }
    }
    std::vector<bool> near(hs.size(), false);
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
        if (d[i] == 0) {
            zc.roots.push_back(hs[i]);
            near[i] = true;
            continue;
        }
        if ((d[i] < 0) == (d[i + 1] < 0) || d[i + 1] == 0) continue;
        auto Tp = [&](double h) { return count_tp(P, h); };
        boost::uintmax_t it = 100;
        auto tol = [&](double a, double b) { return std::fabs(b - a) <= 1e-14 * std::fabs(a); };
        auto r = boost::math::tools::toms748_solve(Tp, hs[i], hs[i + 1], d[i], d[i + 1], tol, it);
        zc.roots.push_back(0.5 * (r.first + r.second));
        near[i] = near[i + 1] = true;
    }
    if (!hs.empty() && d.back() == 0) {
        zc.roots.push_back(hs.back());
        near.back() = true;
    }
    zc.count = int(zc.roots.size());
    zc.certification_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < hs.size(); ++i)
        if (!near[i]) zc.certification_gap = std::min(zc.certification_gap, std::fabs(d[i]));
    return zc;
}

}  // namespace

double period(const PotentialCenter& P, double h, const QuadOptions& opt) {
    check_energy(P, h);
    const double r = std::sqrt(h);
    auto f = [&](double t) {
        const double z = r * std::sin(t);
        return P.g_inverse_derivative(z, 1) + P.g_inverse_derivative(-z, 1);
    };
    return kSqrt2 * integrate(f, 0.0, std::numbers::pi / 2, opt).value;
}

double period_direct(const PotentialCenter& P, double h, const QuadOptions& opt) {
    check_energy(P, h);
    const double r = std::sqrt(h);
    const double xp = P.g_inverse(r), xm = P.g_inverse(-r);
    return kSqrt2 * (half_period(P, h, xp, 1.0, opt) + half_period(P, h, xm, -1.0, opt));
}

double period_derivative(const PotentialCenter& P, double h, const OperatorOptions& opt) {
    check_energy(P, h);
    const double r = std::sqrt(h);
    OperatorOptions o = opt;
    if (P.finite_energy()) o.singularity = std::min(o.singularity, std::sqrt(P.h0()));
    return op_F([&](double z) { return P.f_family(z); }, r, o) / (kSqrt2 * h);
}

double period_derivative_fd(const PotentialCenter& P, double h, double* err) {
    check_energy(P, h);
    double room = h;
    if (P.finite_energy()) room = std::min(room, P.h0() - h);
    return ridders([&](double e) { return period_direct(P, e); }, h, 0.25 * room, err);
}

std::vector<double> energy_grid(const PotentialCenter& P, double h_lo, double h_hi, int resolution) {
    if (!(h_lo < h_hi) || !(h_lo > 0) || resolution < 2) throw DomainError("energy_grid: bad window");
    if (P.finite_energy() && !(h_hi < P.h0())) throw OutOfAnnulusError("energy_grid: window reaches h0");
    std::vector<double> hs(resolution);
    if (P.finite_energy()) {
        const double g0 = std::log(P.h0() - h_lo), g1 = std::log(P.h0() - h_hi);
        for (int i = 0; i < resolution; ++i) hs[i] = P.h0() - std::exp(g0 + (g1 - g0) * i / (resolution - 1));
    } else {
        const double g0 = std::log(h_lo), g1 = std::log(h_hi);
        for (int i = 0; i < resolution; ++i) hs[i] = std::exp(g0 + (g1 - g0) * i / (resolution - 1));
    }
    hs.front() = h_lo;
    hs.back() = h_hi;
    return hs;
}

ZeroCount count_critical_orbits(const PotentialCenter& P, double h_lo, double h_hi, int resolution) {
    auto hs = energy_grid(P, h_lo, h_hi, resolution);
    std::vector<double> d(hs.size());
    for (std::size_t i = 0; i < hs.size(); ++i) d[i] = count_tp(P, hs[i]);
    return finish_count(P, hs, d, h_lo, h_hi);
}

ZeroCount count_critical_orbits_parallel(const PotentialCenter& P, double h_lo, double h_hi, int resolution,
                                         int threads) {
    auto hs = energy_grid(P, h_lo, h_hi, resolution);
    std::vector<double> d(hs.size());
    std::vector<std::string> err(hs.size());
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < int(hs.size()); ++i) {
        try {
            d[i] = count_tp(P, hs[i]);
        } catch (const std::exception& e) {
            err[i] = e.what();
        }
    }
    for (const auto& e : err)
        if (!e.empty()) throw ConvergenceError(e);
    return finish_count(P, hs, d, h_lo, h_hi);
}

std::vector<std::pair<double, double>> mu_grid9(double mu1, double mu2, double d) {
    std::vector<std::pair<double, double>> g;
    for (int i = -1; i <= 1; ++i)
        for (int j = -1; j <= 1; ++j) g.emplace_back(mu1 + i * d, mu2 + j * d);
    return g;
}

namespace {

ScanCell scan_cell(const CenterBuilder& build, double mu1, double mu2, const ScanWindow& w) {
    ScanCell c;
    c.mu1 = mu1;
    c.mu2 = mu2;
    try {
        PotentialCenter P = build(mu1, mu2);
        const double h0 = P.h0();
        c.zc = count_critical_orbits(P, h0 * (1 - w.lo_gap), h0 * (1 - w.hi_gap), w.resolution);
        c.ok = true;
    } catch (const std::exception& e) {
        c.error = e.what();
    }
    return c;
}

}  // namespace

std::vector<ScanCell> scan_serial(const CenterBuilder& build, const std::vector<std::pair<double, double>>& mus,
                                  const ScanWindow& w) {
    std::vector<ScanCell> out;
    out.reserve(mus.size());
    for (const auto& [a, b] : mus) out.push_back(scan_cell(build, a, b, w));
    return out;
}

std::vector<ScanCell> scan_parallel(const CenterBuilder& build, const std::vector<std::pair<double, double>>& mus,
                                    const ScanWindow& w, int threads) {
    std::vector<ScanCell> out(mus.size());
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (int i = 0; i < int(mus.size()); ++i) out[i] = scan_cell(build, mus[i].first, mus[i].second, w);
    return out;
}

WronskianTrace wronskian_criterion_trace(const PotentialCenter& P, const ExponentTuple& nu, double eta, int m,
                                         const std::vector<double>& zs, const SmoothFn* weight,
                                         const OperatorOptions& opt) {
    if (!P.finite_energy()) throw DomainError("wronskian_criterion_trace: needs finite h0");
    if (!nu.pairwise_distinct()) throw DomainError("wronskian_criterion_trace: exponents must be distinct");
    const int n = nu.size();
    const double h0 = P.h0();
    constexpr int kOrder = 6;
    if (n > kOrder) throw CapabilityError("wronskian_criterion_trace: tuple too long");
    SmoothFn ft([&P](int k, double z) { return P.rescaled_f_derivative(k, z); }, kOrder, 0.0, 1.0);
    SmoothFn Fz = op_F_fn(ft, opt);
    SmoothFn G;
    if (weight) {
        SmoothFn inv = (1 / (kSqrt2 * h0)) * SmoothFn::power(-2);
        G = (*weight) * inv * Fz;
    } else {
        SmoothFn s = SmoothFn::from_jet(
            [](double z, int o) {
                return Jet::power_of_linear(o, 1 - z, -1.0, -0.5) * Jet::power_of_linear(o, 1 + z, 1.0, -0.5);
            },
            Jet::kCap - 1, 0.0, 1.0);
        G = s * Fz;
    }
    std::vector<SmoothFn> fs;
    double sum_nu = 0;
    for (double v : nu.nu) {
        fs.push_back(SmoothFn::from_jet([v](double z, int o) { return psi_jet(v, z, o); }, Jet::kCap - 1, 0.0, 1.0));
        sum_nu += v;
    }
    fs.push_back(G);
    WronskianTrace tr;
    // x^{2m+1}/(1+x^2) at x = z/sqrt(1-z^2) behaves like (1-z)^{1/2-m}, hence the 1/2 - m
    tr.kappa = 0.5 - m + n * (n + 3) / 2.0 + sum_nu / 2;
    for (double z : zs) {
        if (!(z > std::numbers::sqrt2 / 2 && z < 1)) throw DomainError("wronskian_criterion_trace: z in (1/sqrt2, 1)");
        const double W = wronskian(fs, z);
        const double y = z / std::sqrt((1 - z) * (1 + z));
        const double norm = std::pow(1 - z, tr.kappa) / omega_big(y, eta + 2 * m);
        tr.points.push_back({z, W, W * norm});
    }
    const int k = std::min<int>(3, int(tr.points.size()));
    if (k > 0) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        bool same = true;
        const double s0 = tr.points[tr.points.size() - k].normalized;
        for (int i = int(tr.points.size()) - k; i < int(tr.points.size()); ++i) {
            const double v = tr.points[i].normalized;
            same = same && std::isfinite(v) && (v > 0) == (s0 > 0) && v != 0;
            lo = std::min(lo, std::fabs(v));
            hi = std::max(hi, std::fabs(v));
        }
        tr.tail_nonzero = same && lo >= 0.2 * hi;
    }
    return tr;
}

}  // namespace percrit
