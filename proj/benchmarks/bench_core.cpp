#include <benchmark/benchmark.h>

#include <cstdint>
#include <thread>

#include "apfree/constructor.hpp"
#include "apfree/dyadic_basis.hpp"
#include "apfree/enumeration.hpp"
#include "apfree/order.hpp"
#include "apfree/verifier.hpp"

using namespace apfree;

namespace {

void BM_RationalEnumeration(benchmark::State& state) {
  const std::uint64_t count = state.range(0);
  for (auto _ : state) {
    RationalStream stream;
    Rational last;
    for (std::uint64_t i = 0; i < count; ++i) last = stream.next();
    benchmark::DoNotOptimize(last);
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_RationalEnumeration)->Arg(1'000)->Arg(10'000)->Arg(100'000);

void BM_ConstructPrefix(benchmark::State& state) {
  const auto depth = static_cast<std::uint32_t>(state.range(0));
  ConstructionOptions opts;
  opts.verify_each_step = false;
  const OrderPtr order = builtin_order(BuiltinOrder::QStandard);
  for (auto _ : state) {
    auto st = construct_prefix(SourceSet::Naturals, order, depth, opts);
    benchmark::DoNotOptimize(st.entries().size());
  }
  state.SetItemsProcessed(state.iterations() * (std::uint64_t{1} << depth));
}
BENCHMARK(BM_ConstructPrefix)->DenseRange(4, 10, 2);

void BM_ConstructRationalsPrefix(benchmark::State& state) {
  const auto depth = static_cast<std::uint32_t>(state.range(0));
  ConstructionOptions opts;
  opts.verify_each_step = false;
  const OrderPtr order = builtin_order(BuiltinOrder::QStandard);
  for (auto _ : state) {
    auto st = construct_prefix(SourceSet::Rationals, order, depth, opts);
    benchmark::DoNotOptimize(st.entries().size());
  }
  state.SetItemsProcessed(state.iterations() * (std::uint64_t{1} << depth));
}
BENCHMARK(BM_ConstructRationalsPrefix)->DenseRange(4, 10, 2);

void BM_BinaryViolationScan(benchmark::State& state) {
  const auto depth = static_cast<std::uint32_t>(state.range(0));
  const auto threads = static_cast<unsigned>(state.range(1));
  ConstructionOptions opts;
  opts.verify_each_step = false;
  const auto st = construct_prefix(
      SourceSet::Naturals, builtin_order(BuiltinOrder::QStandard), depth, opts);
  const FiniteOrderedMap m = st.final_map();
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_binary_violation(m, threads));
  }
  const std::uint64_t n = std::uint64_t{1} << depth;
  state.SetItemsProcessed(state.iterations() * n * (n - 1) / 2);
}
BENCHMARK(BM_BinaryViolationScan)
    ->Args({8, 1})
    ->Args({10, 1})
    ->Args({10, 4})
    ->Args({12, 1})
    ->Args({12, 4});

void BM_QSequence(benchmark::State& state) {
  const auto count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_canonical_q_sequence(count));
  }
  state.SetItemsProcessed(state.iterations() * count);
}
BENCHMARK(BM_QSequence)->Arg(8)->Arg(16)->Arg(32);

void BM_Decompose(benchmark::State& state) {
  const RSequence rs =
      build_r_sequence(build_canonical_q_sequence(32), 64);
  const Rational x(4'097, 96);  // dyadic tail plus an odd-denominator part
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose(x, rs));
  }
}
BENCHMARK(BM_Decompose);

}  // namespace

BENCHMARK_MAIN();
