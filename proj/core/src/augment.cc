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

#include "sentid/augment.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "sentid/error.h"
#include "sentid/utf8.h"

namespace sentid {

namespace {

bool InUnit(double p) { return p >= 0.0 && p <= 1.0; }

// Code points of a punctuation set, each as its UTF-8 sequence.
std::vector<std::string_view> CodePoints(std::string_view set) {
  std::vector<std::string_view> out;
  for (std::size_t pos = 0; pos < set.size();) {
    const std::size_t len = utf8::SequenceLength(set, pos);
    out.push_back(set.substr(pos, len));
    pos += len;
  }
  return out;
}

bool Contains(const std::vector<std::string_view> &set, std::string_view cp) {
  return std::find(set.begin(), set.end(), cp) != set.end();
}

class ExampleBuilder {
 public:
  explicit ExampleBuilder(std::size_t max_tokens) : max_tokens_(max_tokens) {
    example_.unit_starts.push_back(0);
  }

  bool empty() const { return example_.provenance.empty(); }

  bool Fits(const Unit &unit) const {
    return example_.words.size() + unit.words.size() <= max_tokens_;
  }

  void Add(const Unit &unit, std::size_t id, std::string_view tag) {
    AddWords(unit, unit.words.size(), unit.is_su && !unit.words.empty(), id, tag);
  }

  // First unit only: keeps the first max_tokens words as an NSU fragment.
  void AddClipped(const Unit &unit, std::size_t id, std::string_view tag) {
    std::string full_tag(tag);
    full_tag += "+clipped";
    AddWords(unit, max_tokens_, false, id, full_tag);
  }

  TrainingExample Finish() { return std::move(example_); }

 private:
  void AddWords(const Unit &unit, std::size_t count, bool is_su, std::size_t id,
                std::string_view tag) {
    if (!example_.separators.empty()) example_.separators.back() = 1;
    const std::vector<std::size_t> seps = unit.Separators();
    for (std::size_t k = 0; k < count; ++k) {
      example_.words.push_back(unit.words[k]);
      example_.separators.push_back(k + 1 < count ? seps[k] : 0);
      example_.gold.bos.push_back(is_su && k == 0);
      example_.gold.eos.push_back(is_su && k + 1 == count);
    }
    example_.unit_starts.push_back(example_.words.size());
    example_.provenance.push_back("u" + std::to_string(id) + std::string(tag));
  }

  std::size_t max_tokens_;
  TrainingExample example_;
};

std::string TransformTag(const std::optional<UnitTransform> &t) {
  if (!t) return {};
  return "+" + std::string(TransformName(*t));
}

void EraseRange(TrainingExample &ex, std::size_t begin, std::size_t end) {
  const auto b = static_cast<std::ptrdiff_t>(begin);
  const auto e = static_cast<std::ptrdiff_t>(end);
  ex.words.erase(ex.words.begin() + b, ex.words.begin() + e);
  ex.separators.erase(ex.separators.begin() + b, ex.separators.begin() + e);
  ex.gold.bos.erase(ex.gold.bos.begin() + b, ex.gold.bos.begin() + e);
  ex.gold.eos.erase(ex.gold.eos.begin() + b, ex.gold.eos.begin() + e);
}

void ClearFlags(TrainingExample &ex, std::size_t begin, std::size_t end) {
  for (std::size_t k = begin; k < end; ++k) {
    ex.gold.bos[k] = false;
    ex.gold.eos[k] = false;
  }
}

}  // namespace

void AugmentConfig::Validate() const {
  if (!InUnit(p_cc)) throw ConfigError("p_cc must lie in [0,1]");
  if (!InUnit(p_da)) throw ConfigError("p_da must lie in [0,1]");
  if (!InUnit(p_tr)) throw ConfigError("p_tr must lie in [0,1]");
  if (max_tokens == 0) throw ConfigError("max_tokens must be positive");
  const auto all = CodePoints(punct);
  for (std::string_view cp : CodePoints(end_punct)) {
    if (!Contains(all, cp)) {
      throw ConfigError("end punctuation '" + std::string(cp) + "' is not in the punctuation set");
    }
  }
  double total = 0.0;
  for (double w : transform_weights) {
    if (!(w >= 0.0)) throw ConfigError("transform weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError("at least one transform weight must be positive");
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  gen_.seed(seq);
}

double Rng::Uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

std::size_t Rng::Below(std::size_t n) {
  if (n <= 1) return 0;
  const auto k = static_cast<std::size_t>(Uniform() * static_cast<double>(n));
  return std::min(k, n - 1);
}

bool Rng::Bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return Uniform() < p;
}

std::size_t Rng::Weighted(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = Uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] <= 0.0) continue;
    acc += weights[k];
    last_positive = k;
    if (target < acc) return k;
  }
  return last_positive;
}

std::size_t SampleLength(const AugmentConfig &cfg, Rng &rng) {
  if (cfg.p_cc <= 0.0) return kUnboundedLength;
  if (cfg.p_cc >= 1.0) return 1;
  // Inversion: P(L > l) = (1-p)^l.
  const double u = 1.0 - rng.Uniform();  // (0, 1]
  const double l = std::floor(std::log(u) / std::log1p(-cfg.p_cc));
  if (!(l < 1e15)) return kUnboundedLength - 1;
  return 1 + static_cast<std::size_t>(l);
}

void TrainingExample::Validate(std::size_t max_tokens) const {
  const std::size_t n = words.size();
  if (separators.size() != n || gold.bos.size() != n || gold.eos.size() != n) {
    throw ValidationError("example fields disagree on length");
  }
  if (n > max_tokens) {
    throw ValidationError("example has " + std::to_string(n) + " words, cap is " +
                          std::to_string(max_tokens));
  }
  if (unit_starts.empty() || unit_starts.front() != 0 || unit_starts.back() != n ||
      !std::is_sorted(unit_starts.begin(), unit_starts.end())) {
    throw ValidationError("unit boundaries do not tile the example");
  }
  if (provenance.size() != unit_count()) {
    throw ValidationError("one provenance entry per unit expected");
  }
  BoundariesToBio(gold);
}

std::string TrainingExample::ToJson() const {
  nlohmann::json bos = nlohmann::json::array(), eos = nlohmann::json::array();
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (gold.bos[k]) bos.push_back(k);
    if (gold.eos[k]) eos.push_back(k);
  }
  nlohmann::json doc = {{"words", words},
                        {"bos", bos},
                        {"eos", eos},
                        {"provenance", provenance},
                        {"separators", separators}};
  return doc.dump();
}

TrainingExample TrainingExample::FromJson(std::string_view json) {
  TrainingExample ex;
  try {
    const nlohmann::json doc = nlohmann::json::parse(json);
    ex.words = doc.at("words").get<std::vector<std::string>>();
    const std::size_t n = ex.words.size();
    ex.gold = BoundarySeq::Empty(n);
    for (const auto &idx : doc.at("bos")) ex.gold.bos.at(idx.get<std::size_t>()) = true;
    for (const auto &idx : doc.at("eos")) ex.gold.eos.at(idx.get<std::size_t>()) = true;
    if (doc.contains("separators")) {
      ex.separators = doc.at("separators").get<std::vector<std::size_t>>();
    } else {
      ex.separators.assign(n, 1);
      if (n > 0) ex.separators.back() = 0;
    }
    if (ex.separators.size() != n) throw FormatError("separators length differs from words");
    ex.unit_starts = {0, n};
    ex.provenance = {"doc"};
    if (doc.contains("provenance")) {
      std::string joined;
      for (const auto &p : doc.at("provenance")) {
        if (!joined.empty()) joined += ' ';
        joined += p.get<std::string>();
      }
      if (!joined.empty()) ex.provenance = {joined};
    }
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("example record: ") + e.what());
  } catch (const std::out_of_range &) {
    throw FormatError("example record: boundary index out of range");
  }
  BoundariesToBio(ex.gold);
  return ex;
}

TrainingExample ConcatUnits(std::span<const Unit> units, std::size_t first_id,
                            std::size_t length, const AugmentConfig &cfg) {
  ExampleBuilder builder(cfg.max_tokens);
  const std::size_t limit = std::min(length, units.size());
  for (std::size_t k = 0; k < limit; ++k) {
    if (builder.Fits(units[k])) {
      builder.Add(units[k], first_id + k, "");
    } else {
      if (builder.empty()) builder.AddClipped(units[k], first_id + k, "");
      break;
    }
  }
  return builder.Finish();
}

TrainingExample ConcatUnits(const Corpus &corpus, std::size_t start, std::size_t length,
                            const AugmentConfig &cfg) {
  if (start >= corpus.units.size()) {
    throw ValidationError("start unit " + std::to_string(start) + " is past the corpus end");
  }
  return ConcatUnits(std::span<const Unit>(corpus.units).subspan(start), start, length, cfg);
}

std::string_view TransformName(UnitTransform t) {
  switch (t) {
    case UnitTransform::kLower:
      return "lower";
    case UnitTransform::kUpper:
      return "upper";
    case UnitTransform::kTitle:
      return "title";
    case UnitTransform::kStripPunct:
      return "strip_punct";
  }
  return "?";
}

Unit ApplyTransform(const Unit &unit, UnitTransform transform, const AugmentConfig &cfg) {
  std::vector<std::string> words = unit.words;
  std::vector<std::size_t> seps = unit.Separators();
  switch (transform) {
    case UnitTransform::kLower:
      for (auto &w : words) w = utf8::ToLower(w);
      break;
    case UnitTransform::kUpper:
      for (auto &w : words) w = utf8::ToUpper(w);
      break;
    case UnitTransform::kTitle:
      for (auto &w : words) w = utf8::ToTitle(w);
      break;
    case UnitTransform::kStripPunct: {
      const auto all = CodePoints(cfg.punct);
      const auto ending = CodePoints(cfg.end_punct);
      // Walk back over the trailing run of punctuation, across words.
      std::size_t word = words.size();
      std::size_t cut = 0;  // byte offset in words[word] where the run starts
      std::string_view run_head;
      bool found_other = false;
      for (std::size_t w = words.size(); w-- > 0 && !found_other;) {
        const std::vector<std::size_t> cps = utf8::CodePointOffsets(words[w]);
        for (std::size_t c = cps.size() - 1; c-- > 0;) {
          const std::string_view cp =
              std::string_view(words[w]).substr(cps[c], cps[c + 1] - cps[c]);
          if (!Contains(all, cp)) {
            found_other = true;
            break;
          }
          word = w;
          cut = cps[c];
          run_head = cp;
        }
      }
      if (!found_other || run_head.empty() || !Contains(ending, run_head)) return unit;
      words[word].resize(cut);
      words.resize(word + 1);
      if (words[word].empty()) words.pop_back();
      break;
    }
  }
  return Unit::FromWords(std::move(words), seps, unit.is_su);
}

UnitAugmentation AugmentUnit(const Unit &unit, const AugmentConfig &cfg, Rng &rng) {
  if (!rng.Bernoulli(cfg.p_da)) return {unit, std::nullopt};
  const auto t = static_cast<UnitTransform>(rng.Weighted(cfg.transform_weights));
  return {ApplyTransform(unit, t, cfg), t};
}

TrainingExample TruncateFirstUnit(TrainingExample ex, std::size_t keep_from) {
  if (ex.unit_count() == 0 || keep_from == 0) return ex;
  const std::size_t len = ex.unit_starts[1];
  if (keep_from >= len) {
    throw ValidationError("truncation point " + std::to_string(keep_from) +
                          " is outside the first unit of " + std::to_string(len) + " words");
  }
  EraseRange(ex, 0, keep_from);
  for (std::size_t k = 1; k < ex.unit_starts.size(); ++k) ex.unit_starts[k] -= keep_from;
  ClearFlags(ex, 0, ex.unit_starts[1]);
  ex.provenance.front() += "+trunc_head";
  return ex;
}

TrainingExample TruncateLastUnit(TrainingExample ex, std::size_t keep_through) {
  if (ex.unit_count() == 0) return ex;
  const std::size_t start = ex.unit_starts[ex.unit_starts.size() - 2];
  const std::size_t len = ex.words.size() - start;
  if (keep_through >= len) {
    throw ValidationError("truncation point " + std::to_string(keep_through) +
                          " is outside the last unit of " + std::to_string(len) + " words");
  }
  if (keep_through + 1 == len) return ex;
  const std::size_t new_end = start + keep_through + 1;
  EraseRange(ex, new_end, ex.words.size());
  ex.unit_starts.back() = new_end;
  ex.separators.back() = 0;
  ClearFlags(ex, start, new_end);
  ex.provenance.back() += "+trunc_tail";
  return ex;
}

TrainingExample TruncateEdges(TrainingExample ex, const AugmentConfig &cfg, Rng &rng) {
  if (ex.unit_count() == 0) return ex;
  if (rng.Bernoulli(cfg.p_tr)) {
    const std::size_t len = ex.unit_starts[1] - ex.unit_starts[0];
    if (len > 0) ex = TruncateFirstUnit(std::move(ex), rng.Below(len));
  }
  if (rng.Bernoulli(cfg.p_tr)) {
    const std::size_t len = ex.words.size() - ex.unit_starts[ex.unit_starts.size() - 2];
    if (len > 0) ex = TruncateLastUnit(std::move(ex), rng.Below(len));
  }
  return ex;
}

ExampleStream::ExampleStream(const Corpus &corpus, AugmentConfig cfg, std::uint64_t epoch)
    : corpus_(corpus), cfg_(std::move(cfg)), rng_(cfg_.seed, epoch) {
  cfg_.Validate();
}

std::optional<TrainingExample> ExampleStream::Next() {
  const std::size_t n_units = corpus_.units.size();
  if (cursor_ >= n_units) return std::nullopt;
  const std::size_t length = SampleLength(cfg_, rng_);
  ExampleBuilder builder(cfg_.max_tokens);
  for (std::size_t taken = 0; taken < length && cursor_ < n_units; ++taken) {
    UnitAugmentation aug = AugmentUnit(corpus_.units[cursor_], cfg_, rng_);
    const std::string tag = TransformTag(aug.transform);
    if (builder.Fits(aug.unit)) {
      builder.Add(aug.unit, cursor_, tag);
    } else if (builder.empty()) {
      builder.AddClipped(aug.unit, cursor_, tag);
      ++cursor_;
      break;
    } else {
      break;
    }
    ++cursor_;
  }
  return TruncateEdges(builder.Finish(), cfg_, rng_);
}

std::vector<TrainingExample> GenerateEpoch(const Corpus &corpus, const AugmentConfig &cfg,
                                           std::uint64_t epoch) {
  std::vector<TrainingExample> out;
  ExampleStream stream(corpus, cfg, epoch);
  while (auto ex = stream.Next()) out.push_back(std::move(*ex));
  return out;
}

std::vector<TrainingExample> GenerateExamples(const Corpus &corpus, const AugmentConfig &cfg,
                                              std::size_t count) {
  std::vector<TrainingExample> out;
  if (corpus.units.empty()) return out;
  out.reserve(count);
  for (std::uint64_t epoch = 0; out.size() < count; ++epoch) {
    ExampleStream stream(corpus, cfg, epoch);
    while (out.size() < count) {
      auto ex = stream.Next();
      if (!ex) break;
      out.push_back(std::move(*ex));
    }
  }
  return out;
}

}  // namespace sentid
