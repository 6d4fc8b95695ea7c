#include <benchmark/benchmark.h>

#include "hpst/coupling_optimizer.hpp"
#include "hpst/dynamics.hpp"
#include "hpst/hpst_search.hpp"
#include "hpst/pipeline.hpp"
#include "hpst/presets.hpp"
#include "hpst/spectral.hpp"

using namespace hpst;

namespace {

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const Preset& p : presets()) out.push_back(p.name);
    return out;
  }();
  return names;
}

const Preset& preset_arg(const benchmark::State& state) {
  return find_preset(preset_names().at(static_cast<std::size_t>(state.range(0))));
}

void BM_Eigendecompose(benchmark::State& state) {
  const ChainAnalysis a = analyze_chain(preset_arg(state).spec);
  for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(a.block.d_matrix));
  state.SetLabel(preset_arg(state).name);
}
BENCHMARK(BM_Eigendecompose)->DenseRange(0, 5);

void BM_SampleProbability(benchmark::State& state) {
  const Preset& p = preset_arg(state);
  const ChainAnalysis a = analyze_chain(p.spec);
  const TransferAmplitude f(a.spectrum, 1, a.spec.register_nodes.back());
  const std::size_t count = series_length(p.t_max, p.dt);
  for (auto _ : state) benchmark::DoNotOptimize(f.sample_probability(p.dt, count));
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * count));
  state.SetLabel(p.name);
}
BENCHMARK(BM_SampleProbability)->DenseRange(0, 5);

void BM_FindPeak(benchmark::State& state) {
  const Preset& p = preset_arg(state);
  const ChainAnalysis a = analyze_chain(p.spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(find_peak(a.spectrum, 1, a.spec.register_nodes.back(), p.p0, {p.t_max, p.dt}));
  state.SetLabel(p.name);
}
BENCHMARK(BM_FindPeak)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_BuildTable(benchmark::State& state) {
  const Preset& p = preset_arg(state);
  const ChainAnalysis a = analyze_chain(p.spec);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_hpst_table(a.spectrum, a.spec.register_nodes, p.p0, {p.t_max, p.dt}));
  state.SetLabel(p.name);
}
BENCHMARK(BM_BuildTable)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_Objective(benchmark::State& state) {
  const Preset& p = preset_arg(state);
  const OptimizationProblem pb = make_problem(p.spec, p.p0, {p.t_max, p.dt});
  for (auto _ : state) benchmark::DoNotOptimize(objective(pb, p.spec.parameters));
  state.SetLabel(p.name);
}
BENCHMARK(BM_Objective)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
