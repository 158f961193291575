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

#ifndef SENTID_AUGMENT_H_
#define SENTID_AUGMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentid/corpus.h"
#include "sentid/labels.h"

namespace sentid {

inline constexpr std::string_view kDefaultPunct = ".?!\")'";
inline constexpr std::string_view kDefaultEndPunct = ".?!";

struct AugmentConfig {
  // Geometric parameter for the number of concatenated units; 0 means
  // "as many as fit".
  double p_cc = 0.5;
  // Per-unit probability of one casing/punctuation transform.
  double p_da = 0.3;
  // Per-edge probability of truncating the first/last unit.
  double p_tr = 0.1;
  std::size_t max_tokens = 512;
  std::string punct{kDefaultPunct};
  std::string end_punct{kDefaultEndPunct};
  // Relative weights of lower, upper, title, strip-punct.
  std::array<double, 4> transform_weights{1.0, 1.0, 1.0, 1.0};
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;
};

// Seeded generator with platform-independent derived draws (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  double Uniform();  // [0, 1)
  std::size_t Below(std::size_t n);
  bool Bernoulli(double p);
  std::size_t Weighted(std::span<const double> weights);

 private:
  std::mt19937_64 gen_;
};

inline constexpr std::size_t kUnboundedLength = std::numeric_limits<std::size_t>::max();

// L ~ Geometric(p_cc) on {1, 2, ...}; kUnboundedLength when p_cc == 0.
std::size_t SampleLength(const AugmentConfig &cfg, Rng &rng);

struct TrainingExample {
  std::vector<std::string> words;
  // Separator characters after each word (0 after the last one).
  std::vector<std::size_t> separators;
  BoundarySeq gold;
  // Word index where each unit starts, plus words.size() at the end.
  std::vector<std::size_t> unit_starts;
  // One entry per unit: "u<id>" followed by "+<transform>" tags.
  std::vector<std::string> provenance;

  std::size_t unit_count() const { return unit_starts.empty() ? 0 : unit_starts.size() - 1; }
  LabelSeq GoldLabels() const { return BoundariesToBio(gold); }

  // Throws ValidationError.
  void Validate(std::size_t max_tokens) const;

  // {"words": [...], "bos": [idx...], "eos": [idx...], "provenance": [...],
  //  "separators": [...]}
  std::string ToJson() const;
  static TrainingExample FromJson(std::string_view json);
};

// Joins up to `length` units from the front of `units` (the first one has
// corpus id first_id). Stops early when the next unit would exceed
// cfg.max_tokens; a single oversize unit is clipped to max_tokens words and
// relabeled NSU.
TrainingExample ConcatUnits(std::span<const Unit> units, std::size_t first_id,
                            std::size_t length, const AugmentConfig &cfg);
TrainingExample ConcatUnits(const Corpus &corpus, std::size_t start, std::size_t length,
                            const AugmentConfig &cfg);

enum class UnitTransform { kLower, kUpper, kTitle, kStripPunct };

std::string_view TransformName(UnitTransform t);

// Lower/upper/title-case every word, or strip the trailing punctuation run
// when it starts with an end-punctuation character (the unit matches
// .* P_e P*). Stripping never empties a unit. is_su is unchanged.
Unit ApplyTransform(const Unit &unit, UnitTransform transform, const AugmentConfig &cfg);

struct UnitAugmentation {
  Unit unit;
  std::optional<UnitTransform> transform;
};

// With probability p_da applies one transform drawn by transform_weights.
UnitAugmentation AugmentUnit(const Unit &unit, const AugmentConfig &cfg, Rng &rng);

// Drops the words of the first unit before `keep_from`; when anything is
// removed the unit becomes an NSU.
TrainingExample TruncateFirstUnit(TrainingExample example, std::size_t keep_from);
// Drops the words of the last unit after `keep_through`.
TrainingExample TruncateLastUnit(TrainingExample example, std::size_t keep_through);

// Independently for the first and last unit: with probability p_tr pick a
// uniform word position and truncate there.
TrainingExample TruncateEdges(TrainingExample example, const AugmentConfig &cfg, Rng &rng);

// One pass over the corpus: sample L, augment units, concatenate, truncate.
// The stream for (cfg.seed, epoch) is fully deterministic.
class ExampleStream {
 public:
  ExampleStream(const Corpus &corpus, AugmentConfig cfg, std::uint64_t epoch);

  std::optional<TrainingExample> Next();

 private:
  const Corpus &corpus_;
  AugmentConfig cfg_;
  Rng rng_;
  std::size_t cursor_ = 0;
};

// `count` examples, cycling through the corpus with a fresh epoch each pass.
std::vector<TrainingExample> GenerateExamples(const Corpus &corpus, const AugmentConfig &cfg,
                                              std::size_t count);

// All examples of a single pass.
std::vector<TrainingExample> GenerateEpoch(const Corpus &corpus, const AugmentConfig &cfg,
                                           std::uint64_t epoch);

}  // namespace sentid

#endif  // SENTID_AUGMENT_H_
