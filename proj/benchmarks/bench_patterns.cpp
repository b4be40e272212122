#include <benchmark/benchmark.h>

#include <random>

#include "rootpat/harness.hpp"
#include "rootpat/io.hpp"
#include "rootpat/patterns.hpp"

using namespace rootpat;

namespace {

RootBoxes example2_boxes(const FieldPtr& f) {
  return RootBoxes::from_complements(
      f, {{f->exp(2), f->exp(5), f->exp(8), f->exp(11), f->exp(14)}, {f->exp(1), f->exp(6), f->exp(11)}});
}

void BM_FieldMul(benchmark::State& state) {
  const auto f = field_of_order(static_cast<std::uint32_t>(state.range(0)));
  std::mt19937 rng(1);
  std::vector<Elem> xs(1024);
  for (auto& x : xs) x = Elem{static_cast<std::uint32_t>(rng() % f->size())};
  for (auto _ : state) {
    Elem acc = f->one();
    for (Elem x : xs) acc = f->add(f->mul(acc, x), x);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_FieldMul)->Arg(16)->Arg(256)->Arg(4096)->Arg(65536);

void BM_FromRoots(benchmark::State& state) {
  const auto f = field_of_order(static_cast<std::uint32_t>(state.range(0)));
  auto S = f->nonzero_elements();
  S.resize(S.size() / 2);
  for (auto _ : state) benchmark::DoNotOptimize(from_roots(f, S));
}
BENCHMARK(BM_FromRoots)->Arg(16)->Arg(64)->Arg(256);

void BM_NonrootCountBivariate(benchmark::State& state) {
  const auto f = field_of_order(static_cast<std::uint32_t>(state.range(0)));
  std::vector<std::vector<Elem>> S(2);
  for (Elem x : f->nonzero_elements())
    if (x.rep % 3 == 0) S[0].push_back(x), S[1].push_back(x);
  const auto p = product_form(RootBoxes(f, S));
  for (auto _ : state) benchmark::DoNotOptimize(nonroot_count(p));
}
BENCHMARK(BM_NonrootCountBivariate)->Arg(9)->Arg(16)->Arg(32);

void BM_GapSearchExample2(benchmark::State& state) {
  const auto f = field_of_order(16);
  const auto boxes = example2_boxes(f);
  for (auto _ : state) benchmark::DoNotOptimize(gap_search(boxes, GapMode::Shift));
}
BENCHMARK(BM_GapSearchExample2);

void BM_Theorem3Example2(benchmark::State& state) {
  const auto f = field_of_order(16);
  const auto p = product_form(example2_boxes(f));
  for (auto _ : state) benchmark::DoNotOptimize(theorem3_check(p));
}
BENCHMARK(BM_Theorem3Example2);

void BM_CosetContainment(benchmark::State& state) {
  const auto f = field_of_order(static_cast<std::uint32_t>(state.range(0)));
  const auto h = f->subgroups()[f->subgroups().size() - 2];
  std::vector<Elem> T;
  for (Elem x : h.elements) T.push_back(f->mul(f->generator(), x));
  for (auto _ : state) benchmark::DoNotOptimize(coset_containment(*f, T));
}
BENCHMARK(BM_CosetContainment)->Arg(16)->Arg(256)->Arg(4096);

void BM_SuiteThm2IffQ16(benchmark::State& state) {
  SuiteSpec spec;
  spec.suite = SuiteId::Thm2Iff;
  spec.q = 16;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(spec));
}
BENCHMARK(BM_SuiteThm2IffQ16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
