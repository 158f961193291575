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

#include "sentid/model.h"

#include <cmath>
#include <cstring>

#include "json.hpp"
#include "sentid/error.h"

namespace sentid {

namespace {

constexpr char kMagic[8] = {'S', 'E', 'N', 'T', 'I', 'D', 'M', 'D'};
constexpr std::uint32_t kFormatVersion = 1;

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

template <typename T>
void WritePod(std::ostream &out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.write(buf, sizeof(T));
}

template <typename T>
T ReadPod(std::istream &in) {
  char buf[sizeof(T)];
  if (!in.read(buf, sizeof(T))) throw FormatError("model file is truncated");
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

void SgdStep(std::span<double> w, const SparseVector &x, double score, bool target, double lr) {
  const double g = lr * ((target ? 1.0 : 0.0) - Sigmoid(score));
  for (const SparseFeature &f : x) w[f.index] += g * f.value;
}

}  // namespace

ContextSide HeadSide(Head head) {
  switch (head) {
    case Head::kBos:
    case Head::kEos:
      return ContextSide::kBoth;
    case Head::kBosUni:
      return ContextSide::kRightOnly;
    case Head::kEosUni:
      return ContextSide::kLeftOnly;
  }
  return ContextSide::kBoth;
}

void TrainConfig::Validate() const {
  if (epochs < 1) throw ConfigError("epochs must be at least 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(decay > 0.0 && decay <= 1.0)) throw ConfigError("decay must lie in (0,1]");
  features.Validate();
  augment.Validate();
}

ClassifierModel::ClassifierModel(FeatureConfig features, std::uint64_t seed, bool uni)
    : features_(std::move(features)), seed_(seed), has_uni_(uni) {
  features_.Validate();
  for (std::size_t h = 0; h < kHeadCount; ++h) {
    if (h < 2 || uni) weights_[h].assign(features_.dimension(), 0.0);
  }
}

double ClassifierModel::Score(Head head, const SparseVector &x) const {
  const std::vector<double> &w = weights_[static_cast<std::size_t>(head)];
  if (w.empty()) throw ValidationError("model has no unidirectional heads");
  double z = 0.0;
  for (const SparseFeature &f : x) z += w[f.index] * f.value;
  return z;
}

void ClassifierModel::Save(std::ostream &out) const {
  nlohmann::json header = {{"window", features_.window},
                           {"min_ngram", features_.min_ngram},
                           {"max_ngram", features_.max_ngram},
                           {"hash_bits", features_.hash_bits},
                           {"punct", features_.punct},
                           {"end_punct", features_.end_punct},
                           {"seed", seed_},
                           {"uni", has_uni_}};
  const std::string text = header.dump();
  out.write(kMagic, sizeof(kMagic));
  WritePod<std::uint32_t>(out, kFormatVersion);
  WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const std::vector<double> &w : weights_) {
    std::uint64_t nnz = 0;
    for (double v : w) nnz += v != 0.0;
    WritePod<std::uint64_t>(out, nnz);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] == 0.0) continue;
      WritePod<std::uint32_t>(out, static_cast<std::uint32_t>(k));
      WritePod<double>(out, w[k]);
    }
  }
}

ClassifierModel ClassifierModel::Load(std::istream &in) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("not a sentid model file");
  }
  const auto version = ReadPod<std::uint32_t>(in);
  if (version != kFormatVersion) {
    throw FormatError("unsupported model format version " + std::to_string(version));
  }
  const auto header_len = ReadPod<std::uint32_t>(in);
  std::string text(header_len, '\0');
  if (!in.read(text.data(), header_len)) throw FormatError("model file is truncated");
  FeatureConfig features;
  std::uint64_t seed = 0;
  bool uni = false;
  try {
    const nlohmann::json header = nlohmann::json::parse(text);
    features.window = header.at("window").get<int>();
    features.min_ngram = header.at("min_ngram").get<int>();
    features.max_ngram = header.at("max_ngram").get<int>();
    features.hash_bits = header.at("hash_bits").get<int>();
    features.punct = header.at("punct").get<std::string>();
    features.end_punct = header.at("end_punct").get<std::string>();
    seed = header.at("seed").get<std::uint64_t>();
    uni = header.at("uni").get<bool>();
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("model header: ") + e.what());
  }
  ClassifierModel model(features, seed, uni);
  for (std::size_t h = 0; h < kHeadCount; ++h) {
    const auto nnz = ReadPod<std::uint64_t>(in);
    std::vector<double> &w = model.weights_[h];
    if (nnz > w.size()) throw FormatError("model head " + std::to_string(h) + " is corrupt");
    for (std::uint64_t k = 0; k < nnz; ++k) {
      const auto idx = ReadPod<std::uint32_t>(in);
      const auto value = ReadPod<double>(in);
      if (idx >= w.size()) throw FormatError("weight index out of range");
      w[idx] = value;
    }
  }
  return model;
}

ClassifierModel Train(const Corpus &corpus, const TrainConfig &cfg) {
  cfg.Validate();
  if (corpus.units.empty()) throw ValidationError("cannot train on an empty corpus");
  ClassifierModel model(cfg.features, cfg.seed, cfg.uni);
  AugmentConfig augment = cfg.augment;
  augment.seed = cfg.seed;

  double lr = cfg.learning_rate;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    ExampleStream stream(corpus, augment, static_cast<std::uint64_t>(epoch));
    while (auto ex = stream.Next()) {
      const SequenceFeaturizer featurizer(ex->words, model.features());
      for (std::size_t i = 0; i < ex->words.size(); ++i) {
        const SparseVector both = featurizer.Featurize(i, ContextSide::kBoth);
        SgdStep(model.mutable_weights(Head::kBos), both, model.Score(Head::kBos, both),
                ex->gold.bos[i], lr);
        SgdStep(model.mutable_weights(Head::kEos), both, model.Score(Head::kEos, both),
                ex->gold.eos[i], lr);
        if (cfg.uni) {
          const SparseVector right = featurizer.Featurize(i, ContextSide::kRightOnly);
          const SparseVector left = featurizer.Featurize(i, ContextSide::kLeftOnly);
          SgdStep(model.mutable_weights(Head::kBosUni), right, model.Score(Head::kBosUni, right),
                  ex->gold.bos[i], lr);
          SgdStep(model.mutable_weights(Head::kEosUni), left, model.Score(Head::kEosUni, left),
                  ex->gold.eos[i], lr);
        }
      }
    }
    lr *= cfg.decay;
  }
  return model;
}

ProbMatrix Predict(const ClassifierModel &model, std::span<const std::string> words,
                   bool include_uni) {
  if (include_uni && !model.has_uni()) {
    throw ValidationError("model was trained without unidirectional heads");
  }
  const std::size_t n = words.size();
  ProbMatrix m;
  m.p_bos.resize(n);
  m.p_eos.resize(n);
  if (include_uni) {
    m.p_bos_uni.emplace(n);
    m.p_eos_uni.emplace(n);
  }
  const SequenceFeaturizer featurizer(words, model.features());
  for (std::size_t i = 0; i < n; ++i) {
    const SparseVector both = featurizer.Featurize(i, ContextSide::kBoth);
    m.p_bos[i] = Sigmoid(model.Score(Head::kBos, both));
    m.p_eos[i] = Sigmoid(model.Score(Head::kEos, both));
    if (include_uni) {
      (*m.p_bos_uni)[i] =
          Sigmoid(model.Score(Head::kBosUni, featurizer.Featurize(i, ContextSide::kRightOnly)));
      (*m.p_eos_uni)[i] =
          Sigmoid(model.Score(Head::kEosUni, featurizer.Featurize(i, ContextSide::kLeftOnly)));
    }
  }
  return m;
}

}  // namespace sentid
