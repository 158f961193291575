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

#ifndef SENTID_PROBS_H_
#define SENTID_PROBS_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace sentid {

// Per-token BOS/EOS probabilities from any model. The unidirectional
// vectors are present only for models that produce them.
struct ProbMatrix {
  std::vector<double> p_bos;
  std::vector<double> p_eos;
  std::optional<std::vector<double>> p_bos_uni;
  std::optional<std::vector<double>> p_eos_uni;

  std::size_t size() const { return p_bos.size(); }
  bool has_uni() const { return p_bos_uni.has_value() && p_eos_uni.has_value(); }

  // Throws ValidationError on a length mismatch or a value outside [0,1].
  void Validate() const;
};

struct InterpConfig {
  double lambda = 0.5;

  void Validate() const;  // throws ConfigError unless 0 <= lambda <= 1
};

// p'[i] = lambda * p_uni[i] + (1 - lambda) * p[i] for BOS and EOS. The result
// carries no unidirectional vectors. Throws ValidationError when m has none.
ProbMatrix Interpolate(const ProbMatrix &m, const InterpConfig &cfg);

struct ProbDocument {
  std::vector<std::string> tokens;
  ProbMatrix probs;
};

// Probability file:
//   #probs v1 uni=<0|1>
//   #doc 0
//   <index>\t<token>\t<p_bos>\t<p_eos>[\t<p_bos_uni>\t<p_eos_uni>]
//   ...
// "#doc" lines separate documents; a file without them holds a single one.
void WriteProbDocuments(std::span<const ProbDocument> docs, std::ostream &out);
std::vector<ProbDocument> ReadProbDocuments(std::istream &in);

// Single-document convenience; an empty body yields n = 0.
ProbMatrix LoadProbs(std::istream &in);

}  // namespace sentid

#endif  // SENTID_PROBS_H_
