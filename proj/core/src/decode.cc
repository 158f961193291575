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

#include "sentid/decode.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "sentid/error.h"

namespace sentid {

namespace {

constexpr double kScale = 0x1.0p40;

enum class State { kInside, kOutside };

}  // namespace

LogScore LogScore::FromLog(double log_value) {
  if (std::isinf(log_value) && log_value < 0) return NegInf();
  return LogScore(std::llround(log_value * kScale));
}

double LogScore::value() const {
  if (is_neg_inf()) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(raw_) / kScale;
}

void DecoderConfig::Validate() const {
  if (!(candidate_threshold >= 0.0 && candidate_threshold < 1.0)) {
    throw ConfigError("candidate threshold must lie in [0,1)");
  }
  if (!(prob_floor > 0.0 && prob_floor < 0.5)) {
    throw ConfigError("probability floor must lie in (0,0.5)");
  }
}

LogTerms ComputeLogTerms(const ProbMatrix &m, double prob_floor) {
  const std::size_t n = m.size();
  if (m.p_eos.size() != n) throw ValidationError("p_bos and p_eos differ in length");
  LogTerms t;
  t.bos.reserve(n);
  t.not_bos.reserve(n);
  t.eos.reserve(n);
  t.not_eos.reserve(n);
  const double hi = 1.0 - prob_floor;
  for (std::size_t k = 0; k < n; ++k) {
    const double pb = std::clamp(m.p_bos[k], prob_floor, hi);
    const double pe = std::clamp(m.p_eos[k], prob_floor, hi);
    t.bos.push_back(LogScore::FromLog(std::log(pb)));
    t.not_bos.push_back(LogScore::FromLog(std::log1p(-pb)));
    t.eos.push_back(LogScore::FromLog(std::log(pe)));
    t.not_eos.push_back(LogScore::FromLog(std::log1p(-pe)));
  }
  return t;
}

LogScore NsuLogScore(const LogTerms &terms, std::size_t begin, std::size_t end) {
  LogScore total;
  for (std::size_t k = begin; k < end; ++k) total += terms.not_bos[k] + terms.not_eos[k];
  return total;
}

LogScore SuLogScore(const LogTerms &terms, std::size_t begin, std::size_t end) {
  if (begin >= end) return LogScore::NegInf();
  LogScore total = terms.bos[begin] + terms.eos[end - 1];
  for (std::size_t k = begin + 1; k < end; ++k) total += terms.not_bos[k];
  for (std::size_t k = begin; k + 1 < end; ++k) total += terms.not_eos[k];
  return total;
}

SpanResult SegmentEosOnly(const ProbMatrix &m, const DecoderConfig &cfg) {
  cfg.Validate();
  const std::size_t n = m.size();
  SpanResult result;
  result.labels.granularity = Granularity::kWord;
  if (n == 0) return result;
  const LogTerms terms = ComputeLogTerms(m, cfg.prob_floor);
  LogScore total;
  std::size_t start = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const bool eos = m.p_eos[k] >= 0.5 || (cfg.force_last_eos && k + 1 == n);
    total += eos ? terms.eos[k] : terms.not_eos[k];
    if (eos) {
      result.su_spans.push_back({start, k + 1});
      start = k + 1;
    }
  }
  result.log_prob = total.value();
  result.labels = SpansToLabels(n, result.su_spans, Granularity::kWord);
  return result;
}

DPState Forward(const ProbMatrix &m, const DecoderConfig &cfg) {
  cfg.Validate();
  const std::size_t n = m.size();
  const LogTerms t = ComputeLogTerms(m, cfg.prob_floor);
  const double c = cfg.candidate_threshold;
  DPState s;
  s.log_is.assign(n + 1, LogScore::NegInf());
  s.log_os.assign(n + 1, LogScore::NegInf());
  s.opened.assign(n, false);
  s.closed.assign(n, false);
  s.bos_skipped.assign(n, false);
  s.eos_skipped.assign(n, false);
  s.log_os[0] = LogScore();

  for (std::size_t i = 0; i < n; ++i) {
    // BOS step.
    LogScore is_mid = s.log_is[i];
    LogScore os_mid = s.log_os[i];
    if (m.p_bos[i] < c) {
      s.bos_skipped[i] = true;
    } else {
      const LogScore keep = s.log_is[i] + t.not_bos[i];
      const LogScore open = s.log_os[i] + t.bos[i];
      s.opened[i] = open > keep;
      is_mid = s.opened[i] ? open : keep;
      os_mid = s.log_os[i] + t.not_bos[i];
    }
    // EOS step.
    if (m.p_eos[i] < c) {
      s.eos_skipped[i] = true;
      s.log_is[i + 1] = is_mid;
      s.log_os[i + 1] = os_mid;
    } else {
      s.log_is[i + 1] = is_mid + t.not_eos[i];
      const LogScore close = is_mid + t.eos[i];
      const LogScore stay = os_mid + t.not_eos[i];
      s.closed[i] = close >= stay;
      s.log_os[i + 1] = s.closed[i] ? close : stay;
    }
  }
  return s;
}

SpanResult Identify(const ProbMatrix &m, const DecoderConfig &cfg) {
  const std::size_t n = m.size();
  SpanResult result;
  result.labels.granularity = Granularity::kWord;
  if (n == 0) return result;
  const DPState s = Forward(m, cfg);

  BoundarySeq flags = BoundarySeq::Empty(n);
  State state = State::kOutside;
  for (std::size_t i = n; i-- > 0;) {
    if (!s.eos_skipped[i] && state == State::kOutside && s.closed[i]) {
      flags.eos[i] = true;
      state = State::kInside;
    }
    if (!s.bos_skipped[i] && state == State::kInside && s.opened[i]) {
      flags.bos[i] = true;
      state = State::kOutside;
    }
  }
  if (state != State::kOutside) {
    throw Error(ErrorKind::kInternal, "backtracking did not return to the initial state");
  }
  result.labels = BoundariesToBio(flags, Granularity::kWord);
  result.su_spans = LabelsToSpans(result.labels);
  result.log_prob = s.log_os[n].value();
  return result;
}

std::vector<SpanResult> IdentifySegments(std::span<const ProbMatrix> segments,
                                         const DecoderConfig &cfg) {
  std::vector<SpanResult> out;
  out.reserve(segments.size());
  std::size_t offset = 0;
  for (const ProbMatrix &segment : segments) {
    SpanResult r = Identify(segment, cfg);
    for (Span &span : r.su_spans) {
      span.begin += offset;
      span.end += offset;
    }
    offset += segment.size();
    out.push_back(std::move(r));
  }
  return out;
}

DecodeMethod ParseDecodeMethod(std::string_view name) {
  if (name == "eos") return DecodeMethod::kEos;
  if (name == "eos-force" || name == "eos_force") return DecodeMethod::kEosForce;
  if (name == "bosEos" || name == "bos_eos") return DecodeMethod::kBosEos;
  throw ConfigError("unknown decode method '" + std::string(name) + "'");
}

std::string_view DecodeMethodName(DecodeMethod method) {
  switch (method) {
    case DecodeMethod::kEos:
      return "eos";
    case DecodeMethod::kEosForce:
      return "eos_force";
    case DecodeMethod::kBosEos:
      return "bos_eos";
  }
  return "?";
}

SpanResult Decode(const ProbMatrix &m, DecodeMethod method, DecoderConfig cfg) {
  switch (method) {
    case DecodeMethod::kEos:
      cfg.force_last_eos = false;
      return SegmentEosOnly(m, cfg);
    case DecodeMethod::kEosForce:
      cfg.force_last_eos = true;
      return SegmentEosOnly(m, cfg);
    case DecodeMethod::kBosEos:
      return Identify(m, cfg);
  }
  throw Error(ErrorKind::kInternal, "unhandled decode method");
}

std::string SpanResult::ToJson() const {
  nlohmann::json spans = nlohmann::json::array();
  for (const Span &s : su_spans) spans.push_back({s.begin, s.end});
  nlohmann::json doc = {{"spans", spans}, {"labels", labels.ToString()}, {"log_prob", log_prob}};
  return doc.dump();
}

SpanResult SpanResult::FromJson(std::string_view json) {
  SpanResult r;
  try {
    const nlohmann::json doc = nlohmann::json::parse(json);
    for (const auto &pair : doc.at("spans")) {
      r.su_spans.push_back({pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>()});
    }
    r.labels = LabelSeq::FromString(doc.at("labels").get<std::string>(), Granularity::kWord);
    const auto &lp = doc.at("log_prob");
    r.log_prob = lp.is_null() ? -std::numeric_limits<double>::infinity() : lp.get<double>();
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("span record: ") + e.what());
  }
  r.labels.Validate();
  if (LabelsToSpans(r.labels) != r.su_spans) {
    throw FormatError("span record: spans do not match labels '" + r.labels.ToString() + "'");
  }
  return r;
}

void WriteSpanResults(std::span<const SpanResult> results, std::ostream &out) {
  for (const SpanResult &r : results) out << r.ToJson() << '\n';
}

std::vector<SpanResult> ReadSpanResults(std::istream &in) {
  std::vector<SpanResult> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(SpanResult::FromJson(line));
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

}  // namespace sentid
