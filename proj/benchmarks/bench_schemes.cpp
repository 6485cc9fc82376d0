#include <benchmark/benchmark.h>

#include <spinkit/schemes.hpp>

using namespace spinkit;

namespace {

void BM_BuildRelations(benchmark::State& state) {
  HadamardMatrix h = sylvester(state.range(0));
  for (auto _ : state) {
    auto rels = build_relations(h);
    benchmark::DoNotOptimize(rels[kA1p].mat.side());
  }
}

void BM_SchemeCheck(benchmark::State& state) {
  HadamardMatrix h = sylvester(state.range(0));
  SchemeSpec spec = directed_hadamard_scheme(h);
  for (auto _ : state) {
    SchemeCheckResult r = scheme_check(spec.rels);
    benchmark::DoNotOptimize(r.ok());
  }
}

void BM_CoherentConfig(benchmark::State& state) {
  HadamardMatrix h = sylvester(state.range(0));
  for (auto _ : state) {
    VerificationReport r = coherent_config_check(h);
    benchmark::DoNotOptimize(r.ok());
  }
}

BENCHMARK(BM_BuildRelations)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SchemeCheck)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoherentConfig)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
