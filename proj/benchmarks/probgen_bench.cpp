#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "probgen/generator.hpp"
#include "probgen/harness.hpp"
#include "probgen/stats.hpp"
#include "probgen/term.hpp"

namespace {

using namespace probgen;

Signature bench_signature() {
  return parse_signature(
      "(declare-sort S 0)(declare-const a S)(declare-const b S)(declare-const c S)"
      "(declare-fun f (S) S)(declare-fun g (S S) S)");
}

void BM_SampleCategorical(benchmark::State& state) {
  WeightVector w;
  for (int i = 0; i < state.range(0); ++i) w.set("s" + std::to_string(i), 1.0 + i);
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_categorical(w, rng));
}
BENCHMARK(BM_SampleCategorical)->Arg(2)->Arg(16)->Arg(256);

void BM_MakeTerm(benchmark::State& state) {
  const Signature sig = bench_signature();
  StatsStore store;
  for (const char* t : {"(f a)", "(g b (f c))", "(g (g a a) b)"}) store.observe(parse_term(t, sig));
  GenConfig cfg;
  cfg.pick = static_cast<PickStrategy>(state.range(0));
  cfg.depth = static_cast<unsigned>(state.range(1));
  if (uses_flip(cfg.pick)) cfg.flip = 0.5;
  Rng rng(2);
  for (auto _ : state) benchmark::DoNotOptimize(make_term(Sort{"S"}, cfg, store, rng));
}
BENCHMARK(BM_MakeTerm)->ArgsProduct({{0, 1, 2}, {0, 3}});

void BM_GreedyCover(benchmark::State& state) {
  const auto strategies = static_cast<std::size_t>(state.range(0));
  const std::size_t problems = 8024;
  std::mt19937_64 gen(3);
  std::vector<std::string> problem_ids, ids;
  std::vector<ResultsMatrix::SolvedSet> sets;
  for (std::size_t p = 0; p < problems; ++p) problem_ids.push_back("p" + std::to_string(p));
  for (std::size_t s = 0; s < strategies; ++s) {
    ids.push_back("s" + std::to_string(s));
    ResultsMatrix::SolvedSet set(problems);
    for (std::size_t p = 0; p < problems; ++p) {
      if (gen() % 9 < 4) set.set(p);
    }
    sets.push_back(std::move(set));
  }
  const ResultsMatrix matrix(problem_ids, ids, sets);
  CoverOptions options;
  options.exhaust = true;
  for (auto _ : state) benchmark::DoNotOptimize(greedy_cover(matrix, options));
}
BENCHMARK(BM_GreedyCover)->Arg(20)->Arg(110);

}  // namespace

BENCHMARK_MAIN();
