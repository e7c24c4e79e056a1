#include <benchmark/benchmark.h>

#include "kronlab/gaussflow.hpp"
#include "kronlab/kronecker.hpp"
#include "kronlab/lll.hpp"
#include "kronlab/measure.hpp"
#include "kronlab/relation.hpp"
#include "kronlab/rng.hpp"

using namespace kronlab;

namespace {

IntMatrix relation_embedding(int m, int bits) {
  CounterRng rng(4242);
  IntMatrix basis(m, IntVector(m + 1, 0));
  for (int i = 0; i < m; ++i) {
    basis[i][i] = 1;
    mpz_class z = 1;
    mpz_mul_2exp(z.get_mpz_t(), z.get_mpz_t(), bits);
    mpz_class noise(static_cast<unsigned long>(rng.next_u64() >> 8));
    basis[i][m] = z + noise * (i + 1);
  }
  return basis;
}

void BM_LllReduce(benchmark::State& state) {
  IntMatrix basis = relation_embedding(static_cast<int>(state.range(0)), 128);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lll_reduce(basis));
  }
}
BENCHMARK(BM_LllReduce)->Arg(3)->Arg(5)->Arg(8);

void BM_FindIntegerRelation(benchmark::State& state) {
  BigFloat phi = BigFloat::golden_ratio(192);
  std::vector<BigFloat> xs{BigFloat::from_rational(Rational(1), 192), phi, phi * phi};
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_integer_relation(xs, 10, 128));
  }
}
BENCHMARK(BM_FindIntegerRelation);

void BM_SolveLatticeFiveRadicals(benchmark::State& state) {
  UnimodularTarget tg;
  for (long q : {1L, 2L, 3L, 5L, 7L}) {
    tg.points.push_back(BigFloat::sqrt_of(Rational(q), 192));
  }
  tg.phases = {Rational(1, 8), Rational(3, 8), Rational(5, 8), Rational(7, 8), Rational(1, 16)};
  SolveOptions opt;
  opt.eps = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_kronecker_approx(tg, opt));
  }
}
BENCHMARK(BM_SolveLatticeFiveRadicals)->Unit(benchmark::kMillisecond);

void BM_SolveGridPair(benchmark::State& state) {
  UnimodularTarget tg{{BigFloat::from_rational(Rational(1), 192),
                       BigFloat::sqrt_of(Rational(2), 192)},
                      {Rational(0), Rational(1, 2)}};
  SolveOptions opt;
  opt.eps = 0.1;
  opt.method = WitnessMethod::grid;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_kronecker_approx(tg, opt));
  }
}
BENCHMARK(BM_SolveGridPair)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  ProcessSpec spec;
  spec.spectral = PiecewiseMeasure(AtomicMeasure::from_atoms(
      {{RealValue(Rational(1)), Rational(1, 2)},
       {RealValue(BigFloat::sqrt_of(Rational(2), 128)), Rational(1, 2)}}));
  spec.grid = {0.0, 0.25, 128};
  spec.paths = static_cast<int>(state.range(0));
  spec.seed = 9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(spec));
  }
}
BENCHMARK(BM_Simulate)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BochnerGrid(benchmark::State& state) {
  std::vector<Atom> atoms;
  for (long i = 1; i <= 5; ++i) atoms.push_back({RealValue(Rational(i, 3)), Rational(1, 5)});
  PiecewiseMeasure m = PiecewiseMeasure::from_parts(AtomicMeasure::from_atoms(std::move(atoms)),
                                                    {{0.0, 1.0, 0.5}});
  for (auto _ : state) {
    std::complex<double> acc;
    for (int i = 0; i < 100; ++i) acc += bochner(m, -2.0 + 0.04 * i);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_BochnerGrid);

void BM_WeakDistance(benchmark::State& state) {
  PiecewiseMeasure a(AtomicMeasure::from_atoms({{RealValue(Rational(1, 3)), Rational(1)}}));
  PiecewiseMeasure b(AtomicMeasure::from_atoms({{RealValue(Rational(1, 2)), Rational(1)}}));
  MetricConfig cfg;
  cfg.depth = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(weak_distance(a, b, cfg));
  }
}
BENCHMARK(BM_WeakDistance);

}  // namespace

BENCHMARK_MAIN();
