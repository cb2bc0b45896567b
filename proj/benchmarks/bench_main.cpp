#include <benchmark/benchmark.h>

#include <random>

#include "otarith/ideal.hpp"
#include "otarith/linalg.hpp"
#include "otarith/numfield.hpp"
#include "otarith/roots.hpp"
#include "otarith/torsion_growth.hpp"

using namespace otarith;

namespace {

FieldPtr cubic(int m) { return NumberField::build(ZPoly{Int(-1), Int(m), Int(0), Int(1)}); }

void BM_Hnf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> d(-99, 99);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(hnf(a));
}
BENCHMARK(BM_Hnf)->Arg(4)->Arg(8)->Arg(16);

void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> d(-99, 99);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf(a));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8);

// |(O/(p))^x| by enumeration for x^3 + 2x - 1.
void BM_ResidueEnumeration(benchmark::State& state) {
  auto k = cubic(2);
  auto ideal = principal_ideal(k->from_int(Int(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(residue_unit_count_enumeration(ideal));
}
BENCHMARK(BM_ResidueEnumeration)->Arg(7)->Arg(23)->Arg(61);

void BM_TorsionOrder(benchmark::State& state) {
  auto k = cubic(2);
  auto u = k->element(IntVector{2, 0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(torsion_order(u, static_cast<unsigned long>(state.range(0))));
}
BENCHMARK(BM_TorsionOrder)->Arg(16)->Arg(64)->Arg(256);

void BM_IsolateRoots(benchmark::State& state) {
  QPoly f = to_rational(ZPoly{Int(-2), Int(0), Int(0), Int(0), Int(1)});
  for (auto _ : state) benchmark::DoNotOptimize(isolate_roots(f, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_IsolateRoots)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
