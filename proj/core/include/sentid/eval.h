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

#ifndef SENTID_EVAL_H_
#define SENTID_EVAL_H_

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentid/augment.h"
#include "sentid/corpus.h"
#include "sentid/decode.h"
#include "sentid/labels.h"

namespace sentid {

struct LabelScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long long support = 0;
};

// Per-label confusion counts; pooled across documents before scoring.
struct ConfusionCounts {
  std::array<long long, 3> tp{};
  std::array<long long, 3> fp{};
  std::array<long long, 3> fn{};

  void Add(const LabelSeq &gold, const LabelSeq &pred);
  ConfusionCounts &operator+=(const ConfusionCounts &other);
};

struct SpanCounts {
  long long matched = 0;
  long long predicted = 0;
  long long gold = 0;

  void Add(std::span<const Span> gold_spans, std::span<const Span> pred_spans);
  SpanCounts &operator+=(const SpanCounts &other);
};

struct SpanScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // No gold and no predicted spans: scored 1.0 by convention.
  bool both_empty = false;
};

SpanScore ScoreSpans(const SpanCounts &counts);

// Exact-match span F1.
SpanScore SpanF1(std::span<const Span> gold, std::span<const Span> pred);

struct EvalReport {
  Granularity granularity = Granularity::kWord;
  std::array<LabelScore, 3> per_label{};  // indexed by Label
  // Labels occurring in gold or prediction; only these enter macro F1.
  std::array<bool, 3> included{};
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  double span_precision = 0.0;
  double span_recall = 0.0;
  double span_f1 = 0.0;
  bool span_both_empty = false;

  const LabelScore &label(Label l) const { return per_label[static_cast<std::size_t>(l)]; }

  // Flat metric map, values in [0,1]: "B_f1", "macro_f1", "span_f1", ...
  std::map<std::string, double> Metrics() const;

  // Scores are written as percentages.
  std::string ToJson() const;
  static EvalReport FromJson(std::string_view json);
  std::string ToTable() const;
};

EvalReport ScoreCounts(const ConfusionCounts &labels, const SpanCounts &spans, Granularity g);

// Per-label precision/recall/F1 with macro and weighted averages. Throws
// ValidationError on a length or granularity mismatch.
EvalReport BioF1(const LabelSeq &gold, const LabelSeq &pred);

// Pools label and span counts across documents (micro aggregation).
class Evaluator {
 public:
  explicit Evaluator(Granularity g) : granularity_(g) {}

  void Add(const LabelSeq &gold, const LabelSeq &pred);
  EvalReport Report() const;

 private:
  Granularity granularity_;
  ConfusionCounts labels_;
  SpanCounts spans_;
};

// Gold side of one evaluation document at word level, with the character
// layout needed for character-level scoring.
struct GoldDocument {
  std::vector<std::string> words;
  std::vector<std::size_t> separators;
  LabelSeq labels;

  static GoldDocument FromExample(const TrainingExample &example);
  static GoldDocument FromUnit(const Unit &unit);
};

// Word labels of `doc`'s tokens rendered at granularity g (word or char).
LabelSeq ConvertLabels(const LabelSeq &word_labels, const GoldDocument &doc, Granularity g);

// Scores one prediction against its gold document at granularity g.
// Throws FormatError when the prediction length differs from the document.
EvalReport EvaluateDocument(const GoldDocument &gold, const SpanResult &pred, Granularity g);

// Relabels as O every gold SU that crosses one of the segment boundaries
// (token indices where an upstream segmenter starts a new segment).
LabelSeq AdjustGoldForSegments(const LabelSeq &gold, std::span<const std::size_t> segment_starts);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;
};

struct AggregateReport {
  Granularity granularity = Granularity::kWord;
  std::size_t runs = 0;
  // Fewer than two runs: every stddev is 0.
  bool single_run = false;
  std::map<std::string, MetricSummary> metrics;

  const MetricSummary &at(const std::string &metric) const { return metrics.at(metric); }

  std::string ToJson() const;  // percentages
  std::string ToTable() const;
};

// Mean and sample standard deviation (n-1) of every metric. Throws
// ValidationError on an empty list or mixed granularities.
AggregateReport Aggregate(std::span<const EvalReport> reports);

}  // namespace sentid

#endif  // SENTID_EVAL_H_
