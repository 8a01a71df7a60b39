// Serial reference vs OpenMP batch inference on a synthetic organization.

#include <benchmark/benchmark.h>

#include "hiertie/ingest.hpp"
#include "hiertie/pipeline.hpp"

namespace {

using namespace hiertie;

const SyntheticOrg& org() {
  static const SyntheticOrg instance = [] {
    SynthParams sp;
    sp.managers = 30;
    sp.reports_per_manager = 8;
    sp.slots = 24;
    sp.noise_rate = 0.3;
    sp.hierarchy_max_count = 5;
    return generate_synthetic(sp);
  }();
  return instance;
}

MethodSpec spec_for(int method) {
  return {static_cast<Method>(method), Weighting::Weighted, Granularity::month(), 3, {}};
}

void BM_Serial(benchmark::State& state) {
  const QuerySet qs(org().truth.subordinates(), org().edges.nodes());
  const MethodSpec spec = spec_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(infer_all_serial(org().edges, qs, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(qs.size()));
  state.SetLabel(std::string(to_string(spec.method)));
}

void BM_OpenMP(benchmark::State& state) {
  const QuerySet qs(org().truth.subordinates(), org().edges.nodes());
  const MethodSpec spec = spec_for(static_cast<int>(state.range(0)));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(infer_all(org().edges, qs, spec, jobs));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(qs.size()));
  state.SetLabel(std::string(to_string(spec.method)));
}

void BM_SnapshotSeries(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(SnapshotSeries(org().edges, Granularity::week(), Weighting::Weighted));
  }
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OpenMP)->ArgsProduct({{0, 1}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SnapshotSeries)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
