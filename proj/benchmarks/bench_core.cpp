#include <benchmark/benchmark.h>

#include <vector>

#include "drchaos/heat.hpp"
#include "drchaos/lorentz.hpp"
#include "drchaos/nagroup.hpp"
#include "drchaos/spectrum.hpp"
#include "drchaos/spherical.hpp"

using namespace drchaos;

namespace {

const DRSpaceParams kHeis = build_heisenberg(1).params;

void BM_PhiOde(benchmark::State& state) {
    std::vector<double> radii;
    for (int i = 0; i <= 100; ++i) radii.push_back(0.25 * i);
    for (auto _ : state) benchmark::DoNotOptimize(phi_values(cplx(1.5, 0.2), kHeis, radii));
}
BENCHMARK(BM_PhiOde)->Unit(benchmark::kMillisecond);

void BM_PhiIntegral(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(phi_via_integral(cplx(1.5, 0.2), 3.0, kHeis));
}
BENCHMARK(BM_PhiIntegral)->Unit(benchmark::kMillisecond);

void BM_OdeProfile(benchmark::State& state) {
    const auto grid = RadialGrid::build(30.0, static_cast<int>(state.range(0)), kHeis);
    for (auto _ : state) benchmark::DoNotOptimize(phi_via_ode(cplx(2.0, 0.0), grid));
}
BENCHMARK(BM_OdeProfile)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_BuildPipeline(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_pipeline(kHeis));
}
BENCHMARK(BM_BuildPipeline)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_LorentzNorm(benchmark::State& state) {
    const auto grid = RadialGrid::build(30.0, 1024, kHeis);
    const auto phi = phi_via_ode(cplx(0.0, 0.4), grid);
    const auto idx = LorentzIndex::make(4.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(lorentz_norm(phi, idx));
}
BENCHMARK(BM_LorentzNorm)->Unit(benchmark::kMicrosecond);

void BM_Classify(benchmark::State& state) {
    double c = -1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(classify_dynamics(4.0, 2.0, c, 1.0));
        c = c > 2.0 ? -1.0 : c + 0.01;
    }
}
BENCHMARK(BM_Classify);

}  // namespace

BENCHMARK_MAIN();
