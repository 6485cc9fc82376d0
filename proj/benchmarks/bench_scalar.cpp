#include <benchmark/benchmark.h>

#include <spinkit/scalar.hpp>

#include <random>
#include <vector>

using namespace spinkit;

namespace {

// random monomials with small exponents, the shape produced by Y-vector work
std::vector<Scalar> random_terms(const ScalarContext& ctx, int count) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> z8(0, 7), up(-4, 4), sg(0, 1);
  std::vector<Scalar> v;
  v.reserve(count);
  for (int i = 0; i < count; ++i)
    v.push_back(ctx.embed(Monomial(sg(rng) ? 1 : -1, z8(rng), up(rng))));
  return v;
}

void accumulate(benchmark::State& state, const ScalarContext& ctx) {
  std::vector<Scalar> terms = random_terms(ctx, 64);
  for (auto _ : state) {
    Scalar acc = ctx.zero();
    for (size_t i = 0; i + 1 < terms.size(); i += 2)
      acc += terms[i] * conj(terms[i + 1]);
    benchmark::DoNotOptimize(acc);
  }
}

void BM_AccumulateCyclotomic(benchmark::State& state) {
  accumulate(state, make_context(4, UMode::Unit, BackendKind::Cyclotomic));
}

void BM_AccumulateFormal(benchmark::State& state) {
  accumulate(state, default_context(4));
}

void BM_AccumulateHybrid(benchmark::State& state) {
  accumulate(state, default_context(8));
}

void zero_tests(benchmark::State& state, const ScalarContext& ctx) {
  std::vector<Scalar> terms = random_terms(ctx, 256);
  // half the probes cancel exactly, the interesting case for the backends
  std::vector<Scalar> probes;
  for (size_t i = 0; i + 1 < terms.size(); i += 2) {
    probes.push_back(terms[i] - terms[i]);
    probes.push_back(terms[i] - terms[i + 1]);
  }
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_zero(probes[i], ctx));
    i = (i + 1) % probes.size();
  }
}

void BM_IsZeroCyclotomic(benchmark::State& state) {
  zero_tests(state, make_context(4, UMode::Unit, BackendKind::Cyclotomic));
}

void BM_IsZeroFormal(benchmark::State& state) {
  zero_tests(state, default_context(4));
}

void BM_IsZeroHybrid(benchmark::State& state) {
  zero_tests(state, default_context(8));
}

BENCHMARK(BM_AccumulateCyclotomic);
BENCHMARK(BM_AccumulateFormal);
BENCHMARK(BM_AccumulateHybrid);
BENCHMARK(BM_IsZeroCyclotomic);
BENCHMARK(BM_IsZeroFormal);
BENCHMARK(BM_IsZeroHybrid);

}  // namespace
