// Microbenchmarks for the hot paths: mu-functions of cones, renormalization
// decompositions, and brute-force Riemann sums.

#include <benchmark/benchmark.h>

#include <random>

#include "emk/asymptotics.hpp"
#include "emk/mu.hpp"

namespace {

using namespace emk;

AffineCone square_cone() {
  // Apex cone over the unit square lifted to height 1.
  ZMat gens = {{1, 1, 1}, {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};
  return AffineCone{QVec(3, Rational(0)), Cone::from_generators(3, gens)};
}

void BM_MuSquareCone(benchmark::State& state) {
  AffineCone a = square_cone();
  ScalarProduct q = ScalarProduct::identity(3);
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    MuFunction mu = mu_function(a, q, order);
    benchmark::DoNotOptimize(mu.components.size());
  }
}
BENCHMARK(BM_MuSquareCone)->Arg(1)->Arg(3);

void BM_DecomposeRandom(benchmark::State& state) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> entry(-3, 3);
  ScalarProduct q = ScalarProduct::identity(3);
  std::vector<HyperFraction> inputs;
  for (int i = 0; i < 16; ++i) {
    Polynomial num(3);
    num.add_term({1, 1, 0}, Rational(entry(rng)));
    num.add_term({0, 0, 1}, Rational(entry(rng)));
    num.add_term({0, 0, 0}, Rational(entry(rng) + 4));
    std::vector<std::pair<QVec, int>> poles;
    for (int j = 0; j < 3; ++j) {
      QVec v(3, Rational(0));
      v[0] = entry(rng);
      v[1] = entry(rng);
      v[2] = Rational(1);
      poles.emplace_back(v, 1 + (j == 0));
    }
    inputs.emplace_back(3, num, poles);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    auto parts = decompose_general(inputs[i % inputs.size()], q);
    benchmark::DoNotOptimize(parts.size());
    ++i;
  }
}
BENCHMARK(BM_DecomposeRandom);

void BM_OracleTriangle(benchmark::State& state) {
  Polyhedron triangle = Polyhedron::from_generators(
      2, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, {},
      {});
  Polynomial h(2);
  h.add_term({2, 1}, Rational(1));
  Rational t(static_cast<long>(state.range(0)));
  for (auto _ : state) {
    RiemannSumResult r = riemann_sum_oracle(triangle, h, t);
    benchmark::DoNotOptimize(r.point_count);
  }
}
BENCHMARK(BM_OracleTriangle)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
