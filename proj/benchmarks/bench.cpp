#include <benchmark/benchmark.h>

#include "sagbisat/groebner.hpp"
#include "sagbisat/saturate.hpp"
#include "sagbisat/toric.hpp"
#include "sagbisat/uinv.hpp"

using namespace sagbisat;

namespace {

std::vector<Polynomial> parse_all(const RingPtr& r, const std::vector<std::string>& src) {
  std::vector<Polynomial> out;
  for (const auto& s : src) out.push_back(parse_polynomial(r, s));
  return out;
}

void BM_SubalgebraSaturation(benchmark::State& state) {
  auto r = Ring::make(Field::rationals(), 4);
  auto s = SubalgebraPresentation::make(parse_all(r, {"a0", "a1^2 - a0*a2", "a1^3 - a0*a3"}));
  auto g = parse_polynomial(r, "a0");
  for (auto _ : state) benchmark::DoNotOptimize(subalgebra_saturation(s, g));
}
BENCHMARK(BM_SubalgebraSaturation)->Unit(benchmark::kMillisecond);

void BM_SatSagbiStandardGraded(benchmark::State& state) {
  auto w = Grading::standard(3);
  auto r = Ring::make(Field::rationals(), 3, make_a0_degrev(w), w);
  auto s = SubalgebraPresentation::make(
      parse_all(r, {"a0", "a1^2 - a2^2 + a0*a2", "a1*a2 - a2^2 + a0*a1", "a1^3", "a2^4"}), w);
  for (auto _ : state) benchmark::DoNotOptimize(sat_sagbi(s));
}
BENCHMARK(BM_SatSagbiStandardGraded)->Unit(benchmark::kMillisecond);

void BM_ComputeSn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_Sn(UinvProblem{n, Field::rationals(), 2L * n}));
}
BENCHMARK(BM_ComputeSn)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ToricIdeal(benchmark::State& state) {
  std::vector<Term> terms;
  const int k = static_cast<int>(state.range(0));
  for (int i = 0; i <= k; ++i) terms.emplace_back(std::vector<int>{k - i, i});
  for (auto _ : state) benchmark::DoNotOptimize(toric_ideal(terms));
}
BENCHMARK(BM_ToricIdeal)->DenseRange(3, 7, 2)->Unit(benchmark::kMicrosecond);

void BM_Buchberger(benchmark::State& state) {
  auto r = Ring::make(Field::prime(32003), 4);
  auto gens = parse_all(r, {"a0^2 + a1*a2 - a3", "a1^2 - a0*a3 + a2", "a2^2 + a0*a1 - 1", "a3^2 - a0 + a1*a2"});
  for (auto _ : state) benchmark::DoNotOptimize(buchberger(gens));
}
BENCHMARK(BM_Buchberger)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
