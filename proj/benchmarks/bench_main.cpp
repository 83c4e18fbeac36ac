/*
 * Copyright (c) 2026, The scd-axes Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <vector>

#include "scdaxes/scdaxes.hpp"
#include "scdaxes/synthkit.hpp"

namespace {

using namespace scdaxes;

void BM_FitPca(benchmark::State& state) {
  Xoshiro256 rng(1);
  const auto d = static_cast<std::size_t>(state.range(0));
  const Eigen::MatrixXd X = synth::gaussian_matrix(2000, d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fit_pca(X));
}
BENCHMARK(BM_FitPca)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_FitIca(benchmark::State& state) {
  const auto kinds = synth::default_source_kinds(static_cast<std::size_t>(state.range(0)));
  const auto mix = synth::gen_ica_mixture(kinds, 5000, 3);
  for (auto _ : state) benchmark::DoNotOptimize(fit_ica(mix.observed, {}));
}
BENCHMARK(BM_FitIca)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_Roc(benchmark::State& state) {
  Xoshiro256 rng(2);
  std::vector<ScoredLabel> scores(static_cast<std::size_t>(state.range(0)));
  for (auto& s : scores) s = {rng.normal(), rng.below(2) == 1};
  for (auto _ : state) benchmark::DoNotOptimize(roc_from_scores(scores));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Roc)->Arg(1000)->Arg(100000);

void BM_ChangeScores(benchmark::State& state) {
  synth::PlantedSpec spec;
  spec.d = 256;
  spec.n_targets = 20;
  spec.occurrences_per_period = static_cast<std::size_t>(state.range(0));
  const auto fx = synth::gen_planted_temporal(spec);
  const auto pca = fit_pca(fx.store.to_matrix());
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_targets(fx.store, fx.temporal, pca, 0.1, std::nullopt, 0));
  }
}
BENCHMARK(BM_ChangeScores)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_CumulativeSweep(benchmark::State& state) {
  synth::PlantedSpec spec;
  spec.d = 256;
  spec.n_targets = 20;
  spec.occurrences_per_period = 200;
  const auto fx = synth::gen_planted_temporal(spec);
  const auto pca = fit_pca(fx.store.to_matrix());
  const auto grid = default_sweep_grid(pca.axis_count());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        cumulative_change_scores(fx.store, fx.temporal, pca, grid, std::nullopt, 0));
  }
}
BENCHMARK(BM_CumulativeSweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
