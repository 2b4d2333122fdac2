// Serial reference (jobs = 1) against the OpenMP path (jobs = 0) for the
// grid-scan kernels.

#include "cyclic/dicke.hpp"
#include "cyclic/scan.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace cyclic;

namespace {

std::vector<double> grid(int points, double stop) {
    std::vector<double> t(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = stop * i / (points - 1);
    return t;
}

void BM_Entropies(benchmark::State& state) {
    const CouplingConfig cfg = CouplingConfig::make(1.0, 0.7, 0.3);
    const std::vector<double> t = grid(2000, 20.0);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan::entropies(cfg, 2, 2, t, ModeSet{Mode::a}, jobs));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(t.size()));
}

void BM_OracleDefects(benchmark::State& state) {
    const CouplingConfig cfg = CouplingConfig::make(1.0, 0.7, 0.3);
    const std::vector<double> t = grid(500, 10.0);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan::oracle_defects(cfg, 2, 2, t, jobs));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(t.size()));
}

void BM_PhotonTraceDistances(benchmark::State& state) {
    const CouplingConfig cfg = CouplingConfig::make(1.0, 0.0);
    const int atoms = 40;
    const oracle::FiniteNPropagator finite(cfg, atoms, 3, 3, 2);
    const oracle::BosonicPropagator bosonic(cfg, 2);
    const oracle::DickeState finite_initial = oracle::DickeState::basis(atoms, 3, 3, 1, 1);
    const FockState bosonic_initial = FockState::basis({1, 1, 0, 0});
    const std::vector<double> t = grid(401, 6.283185307179586);
    const int jobs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            scan::photon_trace_distances(finite, finite_initial, bosonic, bosonic_initial, 3, t, jobs));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(t.size()));
}

}  // namespace

BENCHMARK(BM_Entropies)->Arg(1)->Arg(0)->ArgName("jobs")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleDefects)->Arg(1)->Arg(0)->ArgName("jobs")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PhotonTraceDistances)->Arg(1)->Arg(0)->ArgName("jobs")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
