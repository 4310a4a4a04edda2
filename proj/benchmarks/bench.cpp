#include <benchmark/benchmark.h>

#include "stonedual/catalog.hpp"
#include "stonedual/ideal.hpp"
#include "stonedual/law_suite.hpp"
#include "stonedual/stone_space.hpp"

using namespace stonedual;

namespace {

const Algebra mixed = Algebra::product({Factor::finite_cofinite(), Factor::finite({"p", "q", "r"}), Factor::finite_cofinite()});

Element sample(Index shift) {
  return mixed.make({Subset::cofinite_except({shift, shift + 3, shift + 9}), Subset::finite({shift % 3}),
                     Subset::finite({shift, shift + 1, shift + 40})});
}

void BM_MeetJoinComplement(benchmark::State& state) {
  const Element a = sample(1);
  const Element b = sample(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mixed.complement(mixed.join(mixed.meet(a, b), a)));
  }
}
BENCHMARK(BM_MeetJoinComplement);

void BM_StoneSet(benchmark::State& state) {
  const Element a = sample(5);
  for (auto _ : state) benchmark::DoNotOptimize(stone_set(mixed, a));
}
BENCHMARK(BM_StoneSet);

void BM_DecideZlbaCatalog(benchmark::State& state) {
  const auto& ideals = builtin_catalog().lba_pairs;
  for (auto _ : state) {
    for (const CatalogLba& l : ideals) benchmark::DoNotOptimize(decide_zlba(l.ideal).is_zlba);
  }
}
BENCHMARK(BM_DecideZlbaCatalog);

void BM_DecideZlbaByJoinsCatalog(benchmark::State& state) {
  const auto& ideals = builtin_catalog().lba_pairs;
  for (auto _ : state) {
    for (const CatalogLba& l : ideals) benchmark::DoNotOptimize(decide_zlba_by_joins(l.ideal).is_zlba);
  }
}
BENCHMARK(BM_DecideZlbaByJoinsCatalog);

void BM_LawSuite(benchmark::State& state) {
  LawSuiteOptions o;
  o.max_atoms = 2;
  o.fc_morphisms = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_law_suite(o).all_pass());
}
BENCHMARK(BM_LawSuite)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_TarskiSuite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_tarski_suite(0, 100, 6).all_pass());
}
BENCHMARK(BM_TarskiSuite)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
