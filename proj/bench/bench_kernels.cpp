// Serial reference vs OpenMP kernels. Thread count follows RANK1KIT_THREADS.

#include <benchmark/benchmark.h>

#include "rank1kit/checks.hpp"
#include "rank1kit/random.hpp"
#include "rank1kit/spectrum.hpp"

using namespace rank1kit;

namespace {

Exec exec_of(const benchmark::State& s) { return s.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& s) { s.SetLabel(s.range(0) == 0 ? "serial" : "parallel"); }

void BM_AlgebraLaws(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(checks::algebra_laws(10000, 1, exec_of(s)));
    label(s);
}

void BM_ModelEquivalenceO(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(checks::model_equivalence(SpaceConfig(Kind::O, 2), 1000, 1, exec_of(s)));
    label(s);
}

void BM_LengthCrossratioU21(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(checks::lemma1_matrix(SpaceConfig(Kind::C, 2), 20, 24, 1, exec_of(s)));
    label(s);
}

void BM_Vogt(benchmark::State& s) {
    for (auto _ : s) benchmark::DoNotOptimize(checks::vogt(10000, 1, exec_of(s)));
    label(s);
}

void BM_TraceJacobianFD(benchmark::State& s) {
    std::mt19937_64 rng(3);
    const SL2Rep rep = random_rep(rng, 6);
    const auto words = cyclic_classes(6, 2);
    for (auto _ : s) benchmark::DoNotOptimize(trace_jacobian(rep, words, Derivative::FiniteDifference, exec_of(s)).matrix(0, 0));
    label(s);
}

void BM_Reconstruct(benchmark::State& s) {
    auto rng = stream_rng(1, 0);
    const LengthOracle oracle = LengthOracle::from_rep(random_schottky_pair(rng));
    ReconstructOptions opt;
    opt.exec = exec_of(s);
    for (auto _ : s) benchmark::DoNotOptimize(reconstruct(oracle, opt).rms);
    label(s);
}

}  // namespace

BENCHMARK(BM_AlgebraLaws)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ModelEquivalenceO)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_LengthCrossratioU21)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Vogt)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TraceJacobianFD)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Reconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
