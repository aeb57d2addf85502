#include "residuum/dsl.hpp"
#include "residuum/oracle.hpp"
#include "residuum/residue_engine.hpp"

#include <benchmark/benchmark.h>

#include <string>

namespace {

using namespace residuum;

std::string dirichlet_pair(int n1, int n2) {
  return "vars x y; cone (-1,1) (0,1); param s1 = 1 s2 = 1 s3 = 1 n1 = " + std::to_string(n1) +
         " n2 = " + std::to_string(n2) +
         "; num n1^(i*x - s1) * n2^(i*y - s2); den (-x - i*s1) (-y - i*s2) (x + y - i*s3);";
}

const char* kCornerPole = "vars x y; cone (1,0) (-1,1); num exp(2*pi*i*(x + 2*y)); den (x - i) (y - i) (x + y - 2*i);";

// n hyperplanes f·x = i k, small integer slopes
std::string fan(int n) {
  std::string src = "vars x y; num exp(i*(x + y)); den";
  for (int k = 0; k < n; ++k)
    src += " (" + std::to_string(k % 3 + 1) + "*x + " + std::to_string(k % 4 - 1) + "*y - " +
           std::to_string(k + 1) + "*i)";
  return src + ";";
}

void BM_EvaluateDirichlet(benchmark::State& state) {
  const Problem p = load_problem(dirichlet_pair(2, 3));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_integral(p.arrangement, p.cone).value);
}
BENCHMARK(BM_EvaluateDirichlet)->Unit(benchmark::kMillisecond);

void BM_EvaluateFan(benchmark::State& state) {
  const Problem p = load_problem(fan(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_integral(p.arrangement, p.cone).value);
}
BENCHMARK(BM_EvaluateFan)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

void BM_EvaluatePrecision(benchmark::State& state) {
  PrecisionScope scope(static_cast<unsigned>(state.range(0)));
  const Problem p = load_problem(kCornerPole);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_integral(p.arrangement, p.cone).value);
}
BENCHMARK(BM_EvaluatePrecision)->Arg(64)->Arg(128)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_QuadratureDirichlet(benchmark::State& state) {
  const Problem p = load_problem(dirichlet_pair(2, 3));
  for (auto _ : state) benchmark::DoNotOptimize(quad_integral(p.arrangement).estimate);
}
BENCHMARK(BM_QuadratureDirichlet)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_QuadratureCornerPole(benchmark::State& state) {
  const Problem p = load_problem(kCornerPole);
  for (auto _ : state) benchmark::DoNotOptimize(quad_integral(p.arrangement).estimate);
}
BENCHMARK(BM_QuadratureCornerPole)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_TorusResidue(benchmark::State& state) {
  const Problem p = load_problem(dirichlet_pair(2, 3));
  const Flag h{{0, 2}};
  const auto nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(torus_residue(p.arrangement, h, {}, nodes));
}
BENCHMARK(BM_TorusResidue)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
