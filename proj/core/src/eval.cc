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

#include "sentid/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sentid/error.h"
#include "sentid/utf8.h"

namespace sentid {

namespace {

constexpr std::array<Label, 3> kLabels = {Label::kB, Label::kI, Label::kO};

double Ratio(long long num, long long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

double Harmonic(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
  return buf;
}

}  // namespace

void ConfusionCounts::Add(const LabelSeq &gold, const LabelSeq &pred) {
  if (gold.size() != pred.size()) {
    throw ValidationError("gold has " + std::to_string(gold.size()) + " labels, prediction " +
                          std::to_string(pred.size()));
  }
  if (gold.granularity != pred.granularity) {
    throw ValidationError("gold and prediction granularities differ");
  }
  for (std::size_t k = 0; k < gold.size(); ++k) {
    const auto g = static_cast<std::size_t>(gold.labels[k]);
    const auto p = static_cast<std::size_t>(pred.labels[k]);
    if (g == p) {
      ++tp[g];
    } else {
      ++fp[p];
      ++fn[g];
    }
  }
}

ConfusionCounts &ConfusionCounts::operator+=(const ConfusionCounts &other) {
  for (std::size_t k = 0; k < 3; ++k) {
    tp[k] += other.tp[k];
    fp[k] += other.fp[k];
    fn[k] += other.fn[k];
  }
  return *this;
}

void SpanCounts::Add(std::span<const Span> gold_spans, std::span<const Span> pred_spans) {
  const std::set<Span> gold_set(gold_spans.begin(), gold_spans.end());
  const std::set<Span> pred_set(pred_spans.begin(), pred_spans.end());
  for (const Span &s : pred_set) matched += gold_set.contains(s);
  predicted += static_cast<long long>(pred_set.size());
  gold += static_cast<long long>(gold_set.size());
}

SpanCounts &SpanCounts::operator+=(const SpanCounts &other) {
  matched += other.matched;
  predicted += other.predicted;
  gold += other.gold;
  return *this;
}

SpanScore ScoreSpans(const SpanCounts &c) {
  SpanScore s;
  if (c.predicted == 0 && c.gold == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    s.both_empty = true;
    return s;
  }
  s.precision = Ratio(c.matched, c.predicted);
  s.recall = Ratio(c.matched, c.gold);
  s.f1 = Harmonic(s.precision, s.recall);
  return s;
}

SpanScore SpanF1(std::span<const Span> gold, std::span<const Span> pred) {
  SpanCounts c;
  c.Add(gold, pred);
  return ScoreSpans(c);
}

EvalReport ScoreCounts(const ConfusionCounts &c, const SpanCounts &spans, Granularity g) {
  EvalReport r;
  r.granularity = g;
  double macro_sum = 0.0, weighted_sum = 0.0;
  long long included = 0, support_sum = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    LabelScore &s = r.per_label[k];
    s.support = c.tp[k] + c.fn[k];
    s.precision = Ratio(c.tp[k], c.tp[k] + c.fp[k]);
    s.recall = Ratio(c.tp[k], s.support);
    s.f1 = Harmonic(s.precision, s.recall);
    r.included[k] = s.support > 0 || c.fp[k] > 0;
    if (r.included[k]) {
      macro_sum += s.f1;
      ++included;
    }
    weighted_sum += static_cast<double>(s.support) * s.f1;
    support_sum += s.support;
  }
  r.macro_f1 = included == 0 ? 0.0 : macro_sum / static_cast<double>(included);
  r.weighted_f1 = support_sum == 0 ? 0.0 : weighted_sum / static_cast<double>(support_sum);
  const SpanScore ss = ScoreSpans(spans);
  r.span_precision = ss.precision;
  r.span_recall = ss.recall;
  r.span_f1 = ss.f1;
  r.span_both_empty = ss.both_empty;
  return r;
}

EvalReport BioF1(const LabelSeq &gold, const LabelSeq &pred) {
  Evaluator ev(gold.granularity);
  ev.Add(gold, pred);
  return ev.Report();
}

void Evaluator::Add(const LabelSeq &gold, const LabelSeq &pred) {
  if (gold.granularity != granularity_) {
    throw ValidationError("document granularity differs from the evaluator's");
  }
  labels_.Add(gold, pred);
  spans_.Add(LabelsToSpans(gold), LabelsToSpans(pred));
}

EvalReport Evaluator::Report() const { return ScoreCounts(labels_, spans_, granularity_); }

std::map<std::string, double> EvalReport::Metrics() const {
  std::map<std::string, double> m;
  for (Label l : kLabels) {
    const std::string name(1, LabelChar(l));
    m[name + "_precision"] = label(l).precision;
    m[name + "_recall"] = label(l).recall;
    m[name + "_f1"] = label(l).f1;
  }
  m["macro_f1"] = macro_f1;
  m["weighted_f1"] = weighted_f1;
  m["span_precision"] = span_precision;
  m["span_recall"] = span_recall;
  m["span_f1"] = span_f1;
  return m;
}

std::string EvalReport::ToJson() const {
  nlohmann::json labels = nlohmann::json::object();
  for (Label l : kLabels) {
    const LabelScore &s = label(l);
    labels[std::string(1, LabelChar(l))] = {{"precision", 100.0 * s.precision},
                                            {"recall", 100.0 * s.recall},
                                            {"f1", 100.0 * s.f1},
                                            {"support", s.support},
                                            {"included", included[static_cast<std::size_t>(l)]}};
  }
  nlohmann::json doc = {{"granularity", GranularityName(granularity)},
                        {"labels", labels},
                        {"macro_f1", 100.0 * macro_f1},
                        {"weighted_f1", 100.0 * weighted_f1},
                        {"span_precision", 100.0 * span_precision},
                        {"span_recall", 100.0 * span_recall},
                        {"span_f1", 100.0 * span_f1},
                        {"span_both_empty", span_both_empty}};
  return doc.dump(2);
}

EvalReport EvalReport::FromJson(std::string_view json) {
  EvalReport r;
  try {
    const nlohmann::json doc = nlohmann::json::parse(json);
    r.granularity = ParseGranularity(doc.at("granularity").get<std::string>());
    for (Label l : kLabels) {
      const auto &s = doc.at("labels").at(std::string(1, LabelChar(l)));
      LabelScore &out = r.per_label[static_cast<std::size_t>(l)];
      out.precision = s.at("precision").get<double>() / 100.0;
      out.recall = s.at("recall").get<double>() / 100.0;
      out.f1 = s.at("f1").get<double>() / 100.0;
      out.support = s.at("support").get<long long>();
      r.included[static_cast<std::size_t>(l)] = s.at("included").get<bool>();
    }
    r.macro_f1 = doc.at("macro_f1").get<double>() / 100.0;
    r.weighted_f1 = doc.at("weighted_f1").get<double>() / 100.0;
    r.span_precision = doc.at("span_precision").get<double>() / 100.0;
    r.span_recall = doc.at("span_recall").get<double>() / 100.0;
    r.span_f1 = doc.at("span_f1").get<double>() / 100.0;
    r.span_both_empty = doc.at("span_both_empty").get<bool>();
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return r;
}

std::string EvalReport::ToTable() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s %10s\n", "label", "precision",
                "recall", "f1", "support");
  out << line;
  for (Label l : kLabels) {
    const LabelScore &s = label(l);
    std::snprintf(line, sizeof(line), "%-10c %10s %10s %10s %10lld\n", LabelChar(l),
                  Percent(s.precision).c_str(), Percent(s.recall).c_str(), Percent(s.f1).c_str(),
                  s.support);
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-10s %10s\n%-10s %10s\n", "macro", Percent(macro_f1).c_str(),
                "weighted", Percent(weighted_f1).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-10s %10s %10s %10s\n", "span", Percent(span_precision).c_str(),
                Percent(span_recall).c_str(), Percent(span_f1).c_str());
  out << line;
  return out.str();
}

GoldDocument GoldDocument::FromExample(const TrainingExample &example) {
  return {example.words, example.separators, example.GoldLabels()};
}

GoldDocument GoldDocument::FromUnit(const Unit &unit) {
  GoldDocument doc{unit.words, unit.Separators(), {Granularity::kWord, {}}};
  for (std::size_t k = 0; k < unit.words.size(); ++k) {
    doc.labels.labels.push_back(!unit.is_su ? Label::kO : (k == 0 ? Label::kB : Label::kI));
  }
  return doc;
}

LabelSeq ConvertLabels(const LabelSeq &word_labels, const GoldDocument &doc, Granularity g) {
  if (word_labels.size() != doc.words.size()) {
    throw FormatError("labels cover " + std::to_string(word_labels.size()) +
                      " tokens but the document has " + std::to_string(doc.words.size()));
  }
  switch (g) {
    case Granularity::kWord:
      return word_labels;
    case Granularity::kChar: {
      std::vector<std::size_t> lengths;
      lengths.reserve(doc.words.size());
      for (const std::string &w : doc.words) lengths.push_back(utf8::Length(w));
      return CoarseToChars(word_labels, lengths, doc.separators);
    }
    case Granularity::kSubword:
      break;
  }
  throw ConfigError("documents are scored at word or char granularity");
}

EvalReport EvaluateDocument(const GoldDocument &gold, const SpanResult &pred, Granularity g) {
  Evaluator ev(g);
  ev.Add(ConvertLabels(gold.labels, gold, g), ConvertLabels(pred.labels, gold, g));
  return ev.Report();
}

LabelSeq AdjustGoldForSegments(const LabelSeq &gold, std::span<const std::size_t> segment_starts) {
  LabelSeq out = gold;
  const std::set<std::size_t> starts(segment_starts.begin(), segment_starts.end());
  for (const Span &s : LabelsToSpans(gold)) {
    bool crosses = false;
    for (std::size_t k = s.begin + 1; k < s.end && !crosses; ++k) crosses = starts.contains(k);
    if (!crosses) continue;
    for (std::size_t k = s.begin; k < s.end; ++k) out.labels[k] = Label::kO;
  }
  return out;
}

AggregateReport Aggregate(std::span<const EvalReport> reports) {
  if (reports.empty()) throw ValidationError("nothing to aggregate");
  AggregateReport agg;
  agg.granularity = reports.front().granularity;
  agg.runs = reports.size();
  agg.single_run = reports.size() < 2;
  std::map<std::string, std::vector<double>> values;
  for (const EvalReport &r : reports) {
    if (r.granularity != agg.granularity) {
      throw ValidationError("cannot aggregate reports of different granularities");
    }
    for (const auto &[name, v] : r.Metrics()) values[name].push_back(v);
  }
  for (const auto &[name, vs] : values) {
    MetricSummary s;
    double sum = 0.0;
    for (double v : vs) sum += v;
    s.mean = sum / static_cast<double>(vs.size());
    if (vs.size() >= 2) {
      double sq = 0.0;
      for (double v : vs) sq += (v - s.mean) * (v - s.mean);
      s.stddev = std::sqrt(sq / static_cast<double>(vs.size() - 1));
    }
    agg.metrics[name] = s;
  }
  return agg;
}

std::string AggregateReport::ToJson() const {
  nlohmann::json metrics_json = nlohmann::json::object();
  for (const auto &[name, s] : metrics) {
    metrics_json[name] = {{"mean", 100.0 * s.mean}, {"std", 100.0 * s.stddev}};
  }
  nlohmann::json doc = {{"granularity", GranularityName(granularity)},
                        {"runs", runs},
                        {"single_run", single_run},
                        {"metrics", metrics_json}};
  return doc.dump(2);
}

std::string AggregateReport::ToTable() const {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-16s %10s %10s\n", "metric", "mean", "std");
  out << line;
  for (const auto &[name, s] : metrics) {
    std::snprintf(line, sizeof(line), "%-16s %10s %10s\n", name.c_str(), Percent(s.mean).c_str(),
                  Percent(s.stddev).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace sentid
