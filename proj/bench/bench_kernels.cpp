// Serial reference kernels against the OpenMP ones.

#include <benchmark/benchmark.h>

#include <random>

#include "tcsp/polymorphism.hpp"
#include "tcsp/pp_formula.hpp"
#include "tcsp/reference.hpp"
#include "tcsp/selftest.hpp"
#include "tcsp/solver.hpp"

using namespace tcsp;

namespace {

const Template& x_template() {
  static const Template t = Template::from_library({"X", "lt"});
  return t;
}

// Six free variables, two of them bound; enough orbits to be worth splitting.
constexpr const char* kFormula = "(a,b,c,d,e): exists h. X(a,b,h) & X(h,c,d) & lt(e,h)";

void BM_EvaluateSerial(benchmark::State& state) {
  const auto phi = parse_pp(kFormula);
  for (auto _ : state) benchmark::DoNotOptimize(reference::evaluate(phi, x_template()));
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto phi = parse_pp(kFormula);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(phi, x_template()));
}

const TemporalRelation& wide_relation() {
  static const TemporalRelation r = rmx({0, 1}, 4);
  return r;
}

void BM_PreservesSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reference::preserves(wide_relation(), PolyOp{OpKind::Mx, false}));
}

void BM_PreservesParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(preserves(wide_relation(), PolyOp{OpKind::Mx, false}));
}

Instance oracle_instance(std::size_t vars) {
  std::mt19937_64 rng(11);
  const auto t = Template::from_library({"Betw", "lt"});
  // Unsatisfiable instances make the search visit every order.
  for (;;) {
    auto a = random_instance(t, rng, vars, vars + 2);
    if (a.variables().size() == vars && !oracle_solve(a, vars).satisfiable) return a;
  }
}

void BM_OracleSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = oracle_instance(n);
  for (auto _ : state) benchmark::DoNotOptimize(reference::oracle_solve(a, n));
}

void BM_OracleParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = oracle_instance(n);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve(a, n));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreservesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreservesParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleSerial)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleParallel)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
