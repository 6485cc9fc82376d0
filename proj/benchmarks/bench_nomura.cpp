#include <benchmark/benchmark.h>

#include <spinkit/models.hpp>
#include <spinkit/nomura.hpp>

using namespace spinkit;

namespace {

void BM_YInner(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  ScalarContext ctx = default_context(k);
  HadamardMatrix h = sylvester(k == 4 ? 2 : 3);
  YTable t = y_table(build_model(ModelKind::Wprime, h, ctx), ctx);
  int n = t.side(), p = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(y_inner(t, p % n, p / n % n, (p + 1) % n, 0, ctx));
    p = (p + 3) % (n * n);
  }
}

void BM_PairGraph(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  ScalarContext ctx = default_context(k);
  SpinMatrix m = build_model(ModelKind::Wprime, sylvester(k == 4 ? 2 : 3), ctx);
  for (auto _ : state) {
    PairPartition p = nomura_graph(m, ctx);
    benchmark::DoNotOptimize(p.classes());
  }
}

void BM_NomuraAlgebra(benchmark::State& state) {
  int k = static_cast<int>(state.range(0));
  ScalarContext ctx = default_context(k);
  SpinMatrix m = build_model(ModelKind::Wprime, sylvester(k == 4 ? 2 : 3), ctx);
  for (auto _ : state) {
    NomuraResult r = nomura_algebra(m, ctx);
    benchmark::DoNotOptimize(r.basis.size());
  }
}

BENCHMARK(BM_YInner)->Arg(4)->Arg(8);
BENCHMARK(BM_PairGraph)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NomuraAlgebra)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
