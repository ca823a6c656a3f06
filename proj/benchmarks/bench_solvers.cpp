// Microbenchmarks for the hot numerical paths: moment evaluation, the linear
// solvers, the determinantal verification route, and the brute-force
// identity sums.

#include <benchmark/benchmark.h>

#include <random>

#include "lmop/hermite_pade.hpp"
#include "lmop/identities.hpp"
#include "lmop/mop_engine.hpp"

namespace {

using namespace lmop;

MeasureSystem make_system(int r, int atoms_per_arc) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double gap = 0.25;
  const double len = (2 * 3.14159265358979323846 - r * gap) / r;
  std::vector<AngelescoArc> arcs(r);
  for (int j = 0; j < r; ++j) {
    arcs[j].alpha = gap / 2 + j * (len + gap);
    arcs[j].beta = arcs[j].alpha + len;
    for (int i = 0; i < atoms_per_arc; ++i) {
      const double slot = len / atoms_per_arc;
      arcs[j].atoms.push_back({arcs[j].alpha + slot * (i + 0.2 + 0.6 * unif(rng)),
                               0.3 + unif(rng)});
    }
  }
  return build_angelesco(arcs, BranchSpec{}, true);
}

void BM_half_moment(benchmark::State& state) {
  const CircleMeasure leb = CircleMeasure::lebesgue({}, static_cast<int>(state.range(0)));
  int p = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(leb.half_moment(p));
    p = (p % 13) + 1;
  }
}
BENCHMARK(BM_half_moment)->Arg(100)->Arg(400);

void BM_solve_type2(benchmark::State& state) {
  MeasureSystem sys = make_system(2, 30);
  const int half = static_cast<int>(state.range(0)) / 2;
  const MultiIndex n{half, static_cast<int>(state.range(0)) - half};
  for (auto _ : state) benchmark::DoNotOptimize(solve_type2(sys, n));
}
BENCHMARK(BM_solve_type2)->Arg(4)->Arg(6)->Arg(8);

void BM_heine_type2(benchmark::State& state) {
  MeasureSystem sys = make_system(2, 20);
  const MultiIndex n{3, 2};
  for (auto _ : state) benchmark::DoNotOptimize(heine_type2(sys, n));
}
BENCHMARK(BM_heine_type2);

void BM_laurent_type1(benchmark::State& state) {
  MeasureSystem sys = make_system(2, 24);
  const MultiIndex n{2, 2}, m{1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(solve_laurent_type1(sys, n, m));
}
BENCHMARK(BM_laurent_type1);

void BM_type2_contact(benchmark::State& state) {
  MeasureSystem sys = make_system(2, 24);
  const MultiIndex half{1, 1};
  const HalfLaurentPoly phi = solve_type2(sys, half.doubled());
  for (auto _ : state) benchmark::DoNotOptimize(type2_contact(sys, phi, half, half));
}
BENCHMARK(BM_type2_contact);

void BM_andreief_rhs(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const int n = static_cast<int>(state.range(0));
  AndreiefInstance inst;
  inst.weights.assign(6, 0.5);
  inst.f_values = ComplexMatrix(n, 6);
  inst.g_values = ComplexMatrix(n, 6);
  inst.a_block = ComplexMatrix(0, 0);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < 6; ++a) {
      inst.f_values(i, a) = Complex(unif(rng), unif(rng));
      inst.g_values(i, a) = Complex(unif(rng), unif(rng));
    }
  for (auto _ : state) benchmark::DoNotOptimize(andreief_rhs(inst));
}
BENCHMARK(BM_andreief_rhs)->Arg(3)->Arg(5);

void BM_normality_sweep(benchmark::State& state) {
  MeasureSystem sys = make_system(2, 30);
  const auto indices = indices_up_to(2, static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (const auto& n : indices) benchmark::DoNotOptimize(normality(sys, n));
}
BENCHMARK(BM_normality_sweep)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
