#include <benchmark/benchmark.h>

#include <random>

#include "pointline/pointline.hpp"

using namespace pointline;

namespace {

CharacteristicMatrix sample_U() { return make_characteristic(0.4, cplx(0.6, 0.2), cplx(0.5, std::sqrt(0.35))); }

void BM_AmplitudesGlobal(benchmark::State& st) {
    const auto U = sample_U();
    const ScaleParameter L0(1.0);
    double k = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(amplitudes_global(U, L0, k));
        k = k < 10.0 ? k + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_AmplitudesGlobal);

void BM_AmplitudesTransfer(benchmark::State& st) {
    const auto L = to_transfer(sample_U(), ScaleParameter(1.0));
    double k = 0.1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(amplitudes_transfer(L, k));
        k = k < 10.0 ? k + 1e-3 : 0.1;
    }
}
BENCHMARK(BM_AmplitudesTransfer);

void BM_Classify(benchmark::State& st) {
    const auto U = sample_U();
    for (auto _ : st) benchmark::DoNotOptimize(classify(U));
}
BENCHMARK(BM_Classify);

void BM_BoxSpectrum(benchmark::State& st) {
    BoxConfig cfg;
    cfg.k_max = double(st.range(0));
    const auto parity = parity_point(1.1, 2.3);
    const auto general = sample_U();
    const auto& U = st.range(1) ? general : parity;
    for (auto _ : st) benchmark::DoNotOptimize(box_spectrum(U, cfg));
    st.SetLabel(st.range(1) ? "general" : "parity-sectors");
}
BENCHMARK(BM_BoxSpectrum)->ArgsProduct({{20, 100}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_SpectralFlowDiagonal(benchmark::State& st) {
    BoxConfig cfg;
    cfg.k_max = 40.0;
    const auto path = diagonal_cycle();
    for (auto _ : st) benchmark::DoNotOptimize(spectral_flow(path, cfg, 10, int(st.range(0))));
}
BENCHMARK(BM_SpectralFlowDiagonal)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_BerryDiscrete(benchmark::State& st) {
    const auto loop = latitude_loop(1.0, int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(loop_phase(loop, PhaseMethod::discrete));
}
BENCHMARK(BM_BerryDiscrete)->Arg(200)->Arg(2000);

void BM_BerryAnalytic(benchmark::State& st) {
    const auto loop = latitude_loop(1.0, 200);
    for (auto _ : st) benchmark::DoNotOptimize(loop_phase(loop, PhaseMethod::analytic));
}
BENCHMARK(BM_BerryAnalytic)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
