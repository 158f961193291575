// Copyright 2026 The sentid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "sentid/decode.h"
#include "sentid/eval.h"
#include "sentid/features.h"
#include "sentid/model.h"
#include "synthetic.h"

namespace {

sentid::ProbMatrix RandomMatrix(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  sentid::ProbMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    m.p_bos.push_back(u(rng));
    m.p_eos.push_back(u(rng));
  }
  return m;
}

void BM_Identify(benchmark::State &state) {
  const sentid::ProbMatrix m = RandomMatrix(static_cast<std::size_t>(state.range(0)));
  const sentid::DecoderConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(sentid::Identify(m, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Identify)->Arg(512)->Arg(4096);

void BM_SegmentEosOnly(benchmark::State &state) {
  const sentid::ProbMatrix m = RandomMatrix(static_cast<std::size_t>(state.range(0)));
  const sentid::DecoderConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(sentid::SegmentEosOnly(m, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SegmentEosOnly)->Arg(512)->Arg(4096);

std::vector<std::string> Words(std::size_t n) {
  const sentid::Corpus c = sentid::testing::SyntheticCorpus({.units = n / 3, .seed = 1});
  std::vector<std::string> words;
  for (const auto &u : c.units) words.insert(words.end(), u.words.begin(), u.words.end());
  words.resize(std::min(words.size(), n));
  return words;
}

void BM_Featurize(benchmark::State &state) {
  const std::vector<std::string> words = Words(512);
  const sentid::FeatureConfig cfg;
  for (auto _ : state) {
    const sentid::SequenceFeaturizer f(words, cfg);
    for (std::size_t i = 0; i < f.size(); ++i) {
      benchmark::DoNotOptimize(f.Featurize(i, sentid::ContextSide::kBoth));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_Featurize);

void BM_Predict(benchmark::State &state) {
  sentid::TrainConfig cfg;
  cfg.epochs = 1;
  cfg.uni = true;
  const sentid::ClassifierModel model =
      sentid::Train(sentid::testing::SyntheticCorpus({.units = 200, .seed = 2}), cfg);
  const std::vector<std::string> words = Words(512);
  for (auto _ : state) benchmark::DoNotOptimize(sentid::Predict(model, words, true));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_Predict);

void BM_Evaluate(benchmark::State &state) {
  const sentid::ProbMatrix m = RandomMatrix(4096);
  const sentid::LabelSeq gold = sentid::Identify(m, {}).labels;
  const sentid::LabelSeq pred = sentid::SegmentEosOnly(m, {}).labels;
  for (auto _ : state) benchmark::DoNotOptimize(sentid::BioF1(gold, pred));
}
BENCHMARK(BM_Evaluate);

}  // namespace

BENCHMARK_MAIN();
