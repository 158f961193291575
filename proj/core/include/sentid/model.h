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

#ifndef SENTID_MODEL_H_
#define SENTID_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sentid/augment.h"
#include "sentid/corpus.h"
#include "sentid/features.h"
#include "sentid/probs.h"

namespace sentid {

// Four logistic heads over one hashed feature space. The unidirectional
// heads only see one side of the context: BOS looks right (positions >= i),
// EOS looks left (positions <= i).
enum class Head : std::size_t { kBos = 0, kEos = 1, kBosUni = 2, kEosUni = 3 };

inline constexpr std::size_t kHeadCount = 4;

ContextSide HeadSide(Head head);

struct TrainConfig {
  int epochs = 5;
  double learning_rate = 0.5;
  // Multiplied into the learning rate after each epoch.
  double decay = 0.95;
  bool uni = false;
  FeatureConfig features;
  // Builds the inputs of every epoch; its seed is overwritten by `seed`.
  AugmentConfig augment;
  std::uint64_t seed = 0;

  void Validate() const;  // throws ConfigError
};

class ClassifierModel {
 public:
  ClassifierModel() = default;
  ClassifierModel(FeatureConfig features, std::uint64_t seed, bool uni);

  const FeatureConfig &features() const { return features_; }
  std::uint64_t seed() const { return seed_; }
  bool has_uni() const { return has_uni_; }

  std::span<const double> weights(Head head) const {
    return weights_[static_cast<std::size_t>(head)];
  }
  std::span<double> mutable_weights(Head head) { return weights_[static_cast<std::size_t>(head)]; }

  double Score(Head head, const SparseVector &x) const;

  // Versioned little-endian binary: magic, JSON header (feature config,
  // seed, uni), then the non-zero weights of each head.
  void Save(std::ostream &out) const;
  static ClassifierModel Load(std::istream &in);

 private:
  FeatureConfig features_;
  std::uint64_t seed_ = 0;
  bool has_uni_ = false;
  std::array<std::vector<double>, kHeadCount> weights_;
};

// SGD on per-token logistic losses. Every epoch draws fresh concatenated
// and augmented inputs from ExampleStream(corpus, augment, epoch). Throws
// ValidationError on an empty corpus.
ClassifierModel Train(const Corpus &corpus, const TrainConfig &cfg);

// Sigmoid of each head's score per token; unidirectional vectors are filled
// iff include_uni (which requires a model trained with uni).
ProbMatrix Predict(const ClassifierModel &model, std::span<const std::string> words,
                   bool include_uni);

}  // namespace sentid

#endif  // SENTID_MODEL_H_
