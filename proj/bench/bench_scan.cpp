// Serial reference vs OpenMP kernels for the zero-count scans.
#include <benchmark/benchmark.h>

#include "percrit/families.hpp"
#include "percrit/period.hpp"

using namespace percrit;

namespace {

const PotentialCenter& center() {
    static const PotentialCenter P = power_center({0.035, 1.965});
    return P;
}

void BM_count_serial(benchmark::State& st) {
    const auto& P = center();
    const double h0 = P.h0();
    for (auto _ : st)
        benchmark::DoNotOptimize(count_critical_orbits(P, h0 * 0.9, h0 * (1 - 1e-5), int(st.range(0))));
}

void BM_count_parallel(benchmark::State& st) {
    const auto& P = center();
    const double h0 = P.h0();
    for (auto _ : st)
        benchmark::DoNotOptimize(count_critical_orbits_parallel(P, h0 * 0.9, h0 * (1 - 1e-5), int(st.range(0))));
}

const CenterBuilder kPower = [](double q, double p) { return power_center({q, p}); };

void BM_scan_serial(benchmark::State& st) {
    const auto mus = mu_grid9(0, 2);
    const ScanWindow w{1e-1, 1e-5, int(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(scan_serial(kPower, mus, w));
}

void BM_scan_parallel(benchmark::State& st) {
    const auto mus = mu_grid9(0, 2);
    const ScanWindow w{1e-1, 1e-5, int(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(scan_parallel(kPower, mus, w));
}

}  // namespace

BENCHMARK(BM_count_serial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_count_parallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_serial)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_parallel)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
