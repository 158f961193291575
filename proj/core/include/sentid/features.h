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

#ifndef SENTID_FEATURES_H_
#define SENTID_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sentid {

enum class ContextSide {
  kBoth,       // positions i-R .. i+R
  kLeftOnly,   // positions i-R .. i
  kRightOnly,  // positions i .. i+R
};

struct FeatureConfig {
  int window = 5;
  int min_ngram = 1;
  int max_ngram = 4;
  int hash_bits = 18;
  std::string punct = ".?!\")'";
  std::string end_punct = ".?!";

  std::size_t dimension() const { return std::size_t{1} << hash_bits; }
  void Validate() const;  // throws ConfigError

  friend bool operator==(const FeatureConfig &, const FeatureConfig &) = default;
};

struct SparseFeature {
  std::uint32_t index;
  float value;

  friend bool operator==(const SparseFeature &, const SparseFeature &) = default;
};

// Sorted by index, no duplicates.
using SparseVector = std::vector<SparseFeature>;

// Stable 64-bit FNV-1a.
std::uint64_t HashString(std::string_view text);

// Token-local feature hashes: character n-grams of the lower-cased word
// with boundary markers, the word itself, its shape (casing/digit pattern)
// and punctuation-class flags.
std::vector<std::uint64_t> TokenFeatureHashes(std::string_view word, const FeatureConfig &cfg);

// Caches token features of one sequence so that every position and side
// can be featurized cheaply.
class SequenceFeaturizer {
 public:
  SequenceFeaturizer(std::span<const std::string> words, const FeatureConfig &cfg);

  std::size_t size() const { return tokens_.size(); }
  SparseVector Featurize(std::size_t position, ContextSide side) const;

 private:
  const FeatureConfig &cfg_;
  std::vector<std::vector<std::uint64_t>> tokens_;
};

// Hashed features of the tokens within the window around `position`,
// restricted to `side`, plus a bias feature. The vector has unit L2 norm.
SparseVector Featurize(std::span<const std::string> words, std::size_t position,
                       ContextSide side, const FeatureConfig &cfg);

}  // namespace sentid

#endif  // SENTID_FEATURES_H_
