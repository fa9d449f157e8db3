#include <benchmark/benchmark.h>

#include "schur/automorphisms.hpp"
#include "schur/catalog.hpp"
#include "schur/covers.hpp"
#include "schur/filtrations.hpp"
#include "schur/schur_quotients.hpp"
#include "schur/sigma.hpp"

namespace {

using namespace schur;

const Catalog& catalog() {
  static const Catalog cat = [] {
    Catalog c = build_catalog({.compute_aut = false});
    assign_aliases(c, load_alias_table(default_alias_path()));
    return c;
  }();
  return cat;
}

GroupPtr entry(const char* alias) { return catalog().find(alias)->group; }

void BM_Multiply(benchmark::State& state) {
  const auto g = free_d4_quotient().group;
  Element x = g->generator(0);
  const Element y = g->mul(g->generator(1), g->generator(0));
  for (auto _ : state) {
    x = g->mul(x, y);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Multiply);

void BM_ZassenhausChain(benchmark::State& state) {
  const auto g = free_d4_quotient().group;
  for (auto _ : state) benchmark::DoNotOptimize(zassenhaus_chain(g));
}
BENCHMARK(BM_ZassenhausChain);

void BM_PCover(benchmark::State& state) {
  const auto g = entry("[2187,33]");
  for (auto _ : state) benchmark::DoNotOptimize(p_cover(g));
}
BENCHMARK(BM_PCover)->Unit(benchmark::kMillisecond);

void BM_AutomorphismCount(benchmark::State& state) {
  const auto g = entry("[243,5]");
  for (auto _ : state) benchmark::DoNotOptimize(automorphism_count(g));
}
BENCHMARK(BM_AutomorphismCount)->Unit(benchmark::kMillisecond);

void BM_IsIsomorphic(benchmark::State& state) {
  const auto a = entry("[243,14]");
  const auto b = entry("[243,15]");
  for (auto _ : state) benchmark::DoNotOptimize(is_isomorphic(a, b));
}
BENCHMARK(BM_IsIsomorphic)->Unit(benchmark::kMillisecond);

void BM_SigmaSearch(benchmark::State& state) {
  const auto g = entry("[729,26]");
  for (auto _ : state) benchmark::DoNotOptimize(is_sigma_group(g));
}
BENCHMARK(BM_SigmaSearch)->Unit(benchmark::kMillisecond);

void BM_ClassifyRecord(benchmark::State& state) {
  const auto& cat = catalog();
  MasseyRecord r;
  r.discriminant = -3299;
  int code = 0;
  for (auto _ : state) {
    int c = code;
    for (auto& x : r.e) {
      x = c % 3;
      c /= 3;
    }
    code = (code + 97) % 6561;
    benchmark::DoNotOptimize(classify_record(cat, r));
  }
}
BENCHMARK(BM_ClassifyRecord)->Unit(benchmark::kMicrosecond);

void BM_SchurStepInit(benchmark::State& state) {
  const auto h = entry("[243,2]");
  for (auto _ : state) {
    benchmark::DoNotOptimize(schur_step(h, SubgroupRecipe::p_central(3), SubgroupRecipe::zassenhaus(4)));
  }
}
BENCHMARK(BM_SchurStepInit)->Unit(benchmark::kMillisecond);

void BM_RecursionD2(benchmark::State& state) {
  const auto h = entry("[243,5]");
  const auto d2 = parse_recipe("D2");
  for (auto _ : state) benchmark::DoNotOptimize(powerfulness_recursion(h, d2));
}
BENCHMARK(BM_RecursionD2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
