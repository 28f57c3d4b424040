// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "ineq/funclib.hpp"
#include "ineq/harness.hpp"

namespace {

using namespace ineq;

const funclib::FunctionSpec& sample_spec() {
  static const auto spec = funclib::FunctionSpec::sum(
      {funclib::FunctionSpec::power(1.5, 2.0, 3.0), funclib::FunctionSpec::exponential(0.5, 0.7, 3.0)});
  return spec;
}

void bm_check_class_serial(benchmark::State& state) {
  const int density = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(funclib::check_class_serial(sample_spec(), funclib::ClassTag::convex(), 3.0, density));
  }
}

void bm_check_class_parallel(benchmark::State& state) {
  const int density = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(funclib::check_class(sample_spec(), funclib::ClassTag::convex(), 3.0, density));
  }
}

harness::Plan sweep_plan(std::size_t cases) {
  harness::Plan plan;
  plan.seed = 7;
  for (auto id : {harness::TheoremId::T3, harness::TheoremId::T6, harness::TheoremId::T8})
    plan.entries.push_back({id, bounds::Variant::AsDerived, cases});
  return plan;
}

void bm_sweep_serial(benchmark::State& state) {
  const auto plan = sweep_plan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(harness::sweep_serial(plan));
}

void bm_sweep_parallel(benchmark::State& state) {
  const auto plan = sweep_plan(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(harness::sweep(plan));
}

}  // namespace

BENCHMARK(bm_check_class_serial)->Arg(25)->Arg(50);
BENCHMARK(bm_check_class_parallel)->Arg(25)->Arg(50);
BENCHMARK(bm_sweep_serial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep_parallel)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
