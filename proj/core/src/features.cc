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

#include "sentid/features.h"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "sentid/error.h"
#include "sentid/utf8.h"

namespace sentid {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t Mix(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

char ShapeClass(unsigned char c) {
  if (c >= 0x80) return 'u';
  if (std::isupper(c)) return 'X';
  if (std::islower(c)) return 'x';
  if (std::isdigit(c)) return 'd';
  return static_cast<char>(c);
}

// "Hello" -> "Xx", "U.S." -> "X.X.", "2001" -> "d"
std::string Shape(std::string_view word) {
  std::string shape;
  for (unsigned char c : word) {
    const char s = ShapeClass(c);
    if (shape.empty() || shape.back() != s || !std::isalnum(static_cast<unsigned char>(s))) {
      shape += s;
    }
    if (shape.size() >= 12) break;
  }
  return shape;
}

bool IsIn(std::string_view set, std::string_view cp) { return set.find(cp) != std::string_view::npos; }

}  // namespace

void FeatureConfig::Validate() const {
  if (window < 0) throw ConfigError("window must be non-negative");
  if (min_ngram < 1 || max_ngram < min_ngram) throw ConfigError("bad n-gram orders");
  if (hash_bits < 4 || hash_bits > 30) throw ConfigError("hash_bits must lie in [4,30]");
}

std::uint64_t HashString(std::string_view text) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : text) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::vector<std::uint64_t> TokenFeatureHashes(std::string_view word, const FeatureConfig &cfg) {
  std::vector<std::uint64_t> out;
  const std::string lower = "^" + utf8::ToLower(word) + "$";
  const std::vector<std::size_t> cps = utf8::CodePointOffsets(lower);
  const std::size_t n_cp = cps.size() - 1;
  for (int order = cfg.min_ngram; order <= cfg.max_ngram; ++order) {
    const auto o = static_cast<std::size_t>(order);
    for (std::size_t start = 0; start + o <= n_cp; ++start) {
      std::string key = "g" + std::to_string(order) + ":";
      key.append(lower, cps[start], cps[start + o] - cps[start]);
      out.push_back(HashString(key));
    }
  }
  out.push_back(HashString("w:" + utf8::ToLower(word)));
  out.push_back(HashString("shape:" + Shape(word)));

  bool all_punct = !word.empty();
  bool any_p = false;
  for (std::size_t pos = 0; pos < word.size();) {
    const std::size_t len = utf8::SequenceLength(word, pos);
    const std::string_view cp = word.substr(pos, len);
    const bool alnum = len == 1 && std::isalnum(static_cast<unsigned char>(cp[0]));
    if (alnum || len > 1) all_punct = false;
    if (IsIn(cfg.punct, cp)) any_p = true;
    pos += len;
  }
  if (all_punct) out.push_back(HashString("is_punct"));
  if (any_p) out.push_back(HashString("has_p"));
  if (!word.empty()) {
    const std::size_t last = utf8::CodePointOffsets(word).rbegin()[1];
    const std::string_view last_cp = word.substr(last);
    if (IsIn(cfg.end_punct, last_cp)) out.push_back(HashString("ends_pe"));
    if (IsIn(cfg.punct, last_cp)) out.push_back(HashString("ends_p"));
    const auto first = static_cast<unsigned char>(word.front());
    if (std::isupper(first)) out.push_back(HashString("init_cap"));
    if (std::islower(first)) out.push_back(HashString("init_lower"));
  }
  return out;
}

SequenceFeaturizer::SequenceFeaturizer(std::span<const std::string> words,
                                       const FeatureConfig &cfg)
    : cfg_(cfg) {
  tokens_.reserve(words.size());
  for (const std::string &w : words) tokens_.push_back(TokenFeatureHashes(w, cfg));
}

SparseVector SequenceFeaturizer::Featurize(std::size_t position, ContextSide side) const {
  const auto n = static_cast<long long>(tokens_.size());
  const auto pos = static_cast<long long>(position);
  const long long window = cfg_.window;
  long long lo = pos - window, hi = pos + window;
  if (side == ContextSide::kLeftOnly) hi = pos;
  if (side == ContextSide::kRightOnly) lo = pos;
  lo = std::max(lo, 0LL);
  hi = std::min(hi, n - 1);

  const std::uint64_t mask = cfg_.dimension() - 1;
  std::vector<std::uint32_t> indices;
  indices.push_back(static_cast<std::uint32_t>(Mix(HashString("<bias>")) & mask));
  for (long long k = lo; k <= hi; ++k) {
    const auto offset = static_cast<std::uint64_t>(k - pos + 1024);
    for (std::uint64_t h : tokens_[static_cast<std::size_t>(k)]) {
      indices.push_back(static_cast<std::uint32_t>(Mix(h ^ (offset * 0x9e3779b97f4a7c15ULL)) & mask));
    }
  }
  std::sort(indices.begin(), indices.end());
  SparseVector out;
  for (std::uint32_t idx : indices) {
    if (!out.empty() && out.back().index == idx) {
      out.back().value += 1.0f;
    } else {
      out.push_back({idx, 1.0f});
    }
  }
  double norm = 0.0;
  for (const SparseFeature &f : out) norm += static_cast<double>(f.value) * f.value;
  const auto scale = static_cast<float>(1.0 / std::sqrt(norm));
  for (SparseFeature &f : out) f.value *= scale;
  return out;
}

SparseVector Featurize(std::span<const std::string> words, std::size_t position,
                       ContextSide side, const FeatureConfig &cfg) {
  return SequenceFeaturizer(words, cfg).Featurize(position, side);
}

}  // namespace sentid
