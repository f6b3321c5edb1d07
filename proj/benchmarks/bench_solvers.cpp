#include <benchmark/benchmark.h>

#include "pflin/acpf_oracle.hpp"
#include "pflin/distribution.hpp"
#include "pflin/linearize.hpp"
#include "pflin/transmission.hpp"
#include "support/cases.hpp"

using namespace pflin;

namespace {

NetworkCase feeder(int n) {
  std::mt19937_64 rng(7);
  return testing::random_feeder(rng, n, {.meshed = true});
}

void BM_BuildAdmittance(benchmark::State& state) {
  const auto c = feeder(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_admittance(c));
}

void BM_NoLoadClosedForm(benchmark::State& state) {
  const auto c = feeder(static_cast<int>(state.range(0)));
  const auto p = build_admittance(c);
  for (auto _ : state) benchmark::DoNotOptimize(solve_distribution(p, c));
}

void BM_General2N(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = feeder(n);
  const auto p = build_admittance(c);
  for (auto _ : state) benchmark::DoNotOptimize(solve_general(p, c, NominalVoltage::flat(n)));
}

void BM_LosslessFlat(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto c = testing::random_lossless(rng, static_cast<int>(state.range(0)), {.with_current = false});
  const auto p = build_admittance(c);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lossless_flat(make_lossless_system(p, c), true));
}

void BM_Newton(benchmark::State& state) {
  const auto c = feeder(static_cast<int>(state.range(0)));
  const auto p = build_admittance(c);
  for (auto _ : state) benchmark::DoNotOptimize(solve_newton(p, c));
}

}  // namespace

BENCHMARK(BM_BuildAdmittance)->Arg(10)->Arg(50);
BENCHMARK(BM_NoLoadClosedForm)->Arg(10)->Arg(50);
BENCHMARK(BM_General2N)->Arg(10)->Arg(50);
BENCHMARK(BM_LosslessFlat)->Arg(10)->Arg(50);
BENCHMARK(BM_Newton)->Arg(10)->Arg(50);

BENCHMARK_MAIN();
