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

#ifndef SENTID_DECODE_H_
#define SENTID_DECODE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentid/labels.h"
#include "sentid/probs.h"

namespace sentid {

// Natural-log score in fixed point with 2^-40 resolution. Integer addition
// makes sums exact and independent of evaluation order, so scores of
// adjacent spans add up exactly and ties compare exactly. The magnitude
// limit (~8.4e6 nats) is far beyond any realistic document.
class LogScore {
 public:
  static constexpr int kFractionBits = 40;

  constexpr LogScore() = default;

  static LogScore FromLog(double log_value);
  static constexpr LogScore NegInf() { return LogScore(kNegInfRaw); }
  static constexpr LogScore FromRaw(std::int64_t raw) { return LogScore(raw); }

  constexpr bool is_neg_inf() const { return raw_ == kNegInfRaw; }
  constexpr std::int64_t raw() const { return raw_; }
  double value() const;

  friend constexpr LogScore operator+(LogScore a, LogScore b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return NegInf();
    return LogScore(a.raw_ + b.raw_);
  }
  LogScore &operator+=(LogScore other) { return *this = *this + other; }
  friend constexpr auto operator<=>(LogScore, LogScore) = default;

 private:
  static constexpr std::int64_t kNegInfRaw = std::numeric_limits<std::int64_t>::min();
  constexpr explicit LogScore(std::int64_t raw) : raw_(raw) {}

  std::int64_t raw_ = 0;
};

struct DecoderConfig {
  // Candidate threshold c: positions whose BOS (EOS) probability is below c
  // never become BOS (EOS).
  double candidate_threshold = 0.1;
  bool force_last_eos = false;
  // Probabilities are clamped to [prob_floor, 1 - prob_floor] before logs.
  double prob_floor = 1e-12;

  void Validate() const;  // throws ConfigError
};

// Per-token log terms after clamping.
struct LogTerms {
  std::vector<LogScore> bos;      // log p_bos
  std::vector<LogScore> not_bos;  // log (1 - p_bos)
  std::vector<LogScore> eos;
  std::vector<LogScore> not_eos;
};

LogTerms ComputeLogTerms(const ProbMatrix &m, double prob_floor);

// Forward pass of the identification recursion. log_is[i] / log_os[i] are
// the best scores of a labeling of the first i tokens that ends inside /
// outside an SU.
struct DPState {
  std::vector<LogScore> log_is;
  std::vector<LogScore> log_os;
  // opened[i]: the best in-SU state after the BOS step at token i came from
  // outside (token i is BOS on that path).
  std::vector<bool> opened;
  // closed[i]: the best outside state after token i came from inside (token i
  // is EOS on that path).
  std::vector<bool> closed;
  // Steps skipped by the candidate threshold.
  std::vector<bool> bos_skipped;
  std::vector<bool> eos_skipped;
};

struct SpanResult {
  std::vector<Span> su_spans;
  double log_prob = 0.0;
  LabelSeq labels;

  // {"spans": [[start,end],...], "labels": "BIO string", "log_prob": float}
  std::string ToJson() const;
  static SpanResult FromJson(std::string_view json);
};

// EOS-only segmentation: EOS wherever p_eos >= 0.5 (and at the last token if
// force_last_eos). Segments ending in EOS are SUs; a trailing segment with no
// EOS is an NSU.
SpanResult SegmentEosOnly(const ProbMatrix &m, const DecoderConfig &cfg);

DPState Forward(const ProbMatrix &m, const DecoderConfig &cfg);

// Sentence identification: the highest-scoring alternating BOS/EOS labeling,
// recovered by backtracking through Forward(). Ties prefer the branch that
// stays in (or closes) an SU.
SpanResult Identify(const ProbMatrix &m, const DecoderConfig &cfg);

// Identify on each segment of a pre-segmented document. Spans in the results
// are document offsets; labels stay per segment.
std::vector<SpanResult> IdentifySegments(std::span<const ProbMatrix> segments,
                                         const DecoderConfig &cfg);

// log p_NSU(W[begin:end]) = sum of log(1-p_bos) + log(1-p_eos) over the span.
LogScore NsuLogScore(const LogTerms &terms, std::size_t begin, std::size_t end);
// log p_SU(W[begin:end]).
LogScore SuLogScore(const LogTerms &terms, std::size_t begin, std::size_t end);

enum class DecodeMethod { kEos, kEosForce, kBosEos };

DecodeMethod ParseDecodeMethod(std::string_view name);  // throws ConfigError
std::string_view DecodeMethodName(DecodeMethod method);

// Dispatches to SegmentEosOnly (force_last_eos set by the method) or Identify.
SpanResult Decode(const ProbMatrix &m, DecodeMethod method, DecoderConfig cfg);

void WriteSpanResults(std::span<const SpanResult> results, std::ostream &out);
std::vector<SpanResult> ReadSpanResults(std::istream &in);

}  // namespace sentid

#endif  // SENTID_DECODE_H_
