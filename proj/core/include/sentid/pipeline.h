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

#ifndef SENTID_PIPELINE_H_
#define SENTID_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sentid/augment.h"
#include "sentid/conllu.h"
#include "sentid/corpus.h"
#include "sentid/decode.h"
#include "sentid/eval.h"
#include "sentid/model.h"
#include "sentid/probs.h"

namespace sentid {

struct PipelinePaths {
  // CoNLL-U input; converted when set, otherwise the *_corpus files are read.
  std::string train_treebank;
  std::string test_treebank;
  std::string train_corpus;
  std::string test_corpus;
  // Artifacts are written here when non-empty.
  std::string output_dir;
};

struct PipelineConfig {
  static constexpr int kVersion = 1;

  PipelinePaths paths;
  RelationRuleSet rules = RelationRuleSet::Default();
  // Training: augmentation and concatenation of the train split. The model
  // field's own augment config is ignored in favour of this one.
  AugmentConfig augment;
  TrainConfig model;
  InterpConfig interp;
  DecoderConfig decoder;
  DecodeMethod method = DecodeMethod::kBosEos;
  // Concatenation parameters used to assemble evaluation inputs.
  std::vector<double> eval_pcc{0.5, 0.0};
  std::vector<Granularity> granularities{Granularity::kWord, Granularity::kChar};
  std::vector<std::uint64_t> seeds;
  bool parallel_seeds = false;

  // Throws ConfigError naming the offending key.
  void Validate() const;
};

// JSON document; unknown keys and missing "version"/"seeds" are rejected
// with the key path in the message.
PipelineConfig ParseConfig(std::string_view json);
PipelineConfig LoadConfig(const std::filesystem::path &path);

// Identifies one evaluation condition, e.g. "pcc=0.5/word".
std::string ConditionName(double eval_pcc, Granularity g);

struct RunResult {
  std::uint64_t seed = 0;
  std::map<std::string, EvalReport> reports;  // by condition
};

struct PipelineResult {
  std::vector<RunResult> runs;
  std::map<std::string, AggregateReport> aggregates;  // by condition

  std::string ToJson() const;
};

// Full loop per seed: train, assemble evaluation inputs, predict, decode,
// evaluate; then aggregate across seeds. Stage failures are rethrown with
// the stage name prefixed.
PipelineResult RunPipeline(const PipelineConfig &cfg);

// Same loop on corpora already in memory (paths are only used for output).
PipelineResult RunPipeline(const PipelineConfig &cfg, const Corpus &train, const Corpus &test);

}  // namespace sentid

#endif  // SENTID_PIPELINE_H_
