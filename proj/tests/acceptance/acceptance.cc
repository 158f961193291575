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

// Acceptance suite: one PASS/FAIL/SKIP line per criterion. Exit status is
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "sentid/augment.h"
#include "sentid/conllu.h"
#include "sentid/corpus.h"
#include "sentid/decode.h"
#include "sentid/eval.h"
#include "sentid/labels.h"
#include "sentid/pipeline.h"
#include "sentid/probs.h"
#include "synthetic.h"

namespace {

using namespace sentid;
using Clock = std::chrono::steady_clock;

struct Outcome {
  enum Status { kPass, kFail, kSkip } status = kPass;
  std::string detail;
};

Outcome Pass(std::string detail) { return {Outcome::kPass, std::move(detail)}; }
Outcome Fail(std::string detail) { return {Outcome::kFail, std::move(detail)}; }
Outcome Skip(std::string detail) { return {Outcome::kSkip, std::move(detail)}; }

std::string Fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ProbMatrix RandomMatrix(std::mt19937_64 &rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ProbMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    m.p_bos.push_back(u(rng));
    m.p_eos.push_back(u(rng));
  }
  return m;
}

std::vector<Label> RandomLabels(std::mt19937_64 &rng, std::size_t n) {
  std::vector<Label> out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool inside = !out.empty() && out.back() != Label::kO;
    const int k = std::uniform_int_distribution<int>(0, inside ? 2 : 1)(rng);
    out.push_back(k == 0 ? Label::kB : k == 1 ? Label::kO : Label::kI);
  }
  return out;
}

Outcome DpOracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  DecoderConfig cfg;
  cfg.candidate_threshold = 0.0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 10;
    const ProbMatrix m = RandomMatrix(rng, n);
    const testing::BruteForceResult brute = testing::BruteForceIdentify(m, cfg.prob_floor);
    const SpanResult got = Identify(m, cfg);
    const double attained = testing::LabelingLogProb(m, got.labels.labels, cfg.prob_floor);
    worst = std::max({worst, std::abs(got.log_prob - brute.best), std::abs(attained - brute.best)});
    if (std::abs(got.log_prob - brute.best) > 1e-9 || std::abs(attained - brute.best) > 1e-9) {
      return Fail(Fmt("trial %d (n=%zu): identify %.15g, labeling %.15g, optimum %.15g", trial, n,
                      got.log_prob, attained, brute.best));
    }
  }
  const double secs = Seconds(start);
  if (secs >= 60.0) return Fail(Fmt("took %.1fs", secs));
  return Pass(Fmt("1000 matrices, n in [1,10], max |diff| %.2g, %.2fs", worst, secs));
}

Outcome ThresholdSoundness() {
  std::mt19937_64 rng(202);
  DecoderConfig with_c;
  with_c.candidate_threshold = 0.1;
  DecoderConfig no_c;
  no_c.candidate_threshold = 0.0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 40;
    const ProbMatrix m = RandomMatrix(rng, n);
    ProbMatrix zeroed = m;
    for (double &p : zeroed.p_bos) p = p < 0.1 ? 0.0 : p;
    for (double &p : zeroed.p_eos) p = p < 0.1 ? 0.0 : p;
    const SpanResult a = Identify(m, with_c);
    const SpanResult b = Identify(zeroed, no_c);
    if (a.su_spans != b.su_spans || a.labels != b.labels) {
      return Fail(Fmt("trial %d: %s vs %s", trial, a.labels.ToString().c_str(),
                      b.labels.ToString().c_str()));
    }
    worst = std::max(worst, std::abs(a.log_prob - b.log_prob));
    if (std::abs(a.log_prob - b.log_prob) > 1e-9) {
      return Fail(Fmt("trial %d: log prob %.15g vs %.15g", trial, a.log_prob, b.log_prob));
    }
  }
  return Pass(Fmt("200 matrices, spans and labels identical, log-prob gap <= %.2g", worst));
}

Outcome SegmentationReduction() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t with_o = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + trial % 60;
    ProbMatrix m = RandomMatrix(rng, n);
    // Exercise the boundary value itself.
    for (double &p : m.p_eos) {
      if (u(rng) < 0.05) p = 0.5;
    }
    DecoderConfig cfg;
    const SpanResult plain = SegmentEosOnly(m, cfg);
    const BoundarySeq b = BioToBoundaries(plain.labels);
    for (std::size_t i = 0; i < n; ++i) {
      if (b.eos[i] != (m.p_eos[i] >= 0.5)) {
        return Fail(Fmt("trial %d: EOS at %zu is %d for p=%.17g", trial, i, int(b.eos[i]),
                        m.p_eos[i]));
      }
    }
    for (Label l : plain.labels.labels) with_o += l == Label::kO;
    cfg.force_last_eos = true;
    const SpanResult forced = SegmentEosOnly(m, cfg);
    for (Label l : forced.labels.labels) {
      if (l == Label::kO) return Fail(Fmt("trial %d: force-last output has an O label", trial));
    }
  }
  if (with_o == 0) return Fail("generator never produced a trailing NSU segment");
  return Pass("2000 vectors; EOS set = {i : p >= 0.5}; force-last never emits O");
}

Outcome NsuAdditivity() {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 50;
    const ProbMatrix m = RandomMatrix(rng, n);
    const LogTerms t = ComputeLogTerms(m, 1e-12);
    const LogScore whole = NsuLogScore(t, 0, n);
    for (std::size_t k = 0; k <= n; ++k) {
      const LogScore parts = NsuLogScore(t, 0, k) + NsuLogScore(t, k, n);
      if (parts != whole) {
        return Fail(Fmt("trial %d split %zu: %.17g vs %.17g", trial, k, parts.value(),
                        whole.value()));
      }
    }
  }
  return Pass("100 matrices, every split point, bitwise equal");
}

Outcome LabelAlgebra() {
  std::mt19937_64 rng(505);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 30)(rng);
    LabelSeq words{Granularity::kWord, RandomLabels(rng, n)};
    std::vector<std::size_t> lengths, seps;
    for (std::size_t i = 0; i < n; ++i) {
      lengths.push_back(std::uniform_int_distribution<std::size_t>(1, 8)(rng));
      seps.push_back(i + 1 == n ? 0 : std::uniform_int_distribution<std::size_t>(0, 2)(rng));
    }
    const LabelSeq chars = CoarseToChars(words, lengths, seps);
    const LabelSeq back = CharsToCoarse(chars, TokenCharSpans(lengths, seps));
    if (back != words) {
      return Fail(Fmt("trial %d: %s -> %s -> %s", trial, words.ToString().c_str(),
                      chars.ToString().c_str(), back.ToString().c_str()));
    }
    if (BoundariesToBio(BioToBoundaries(words)) != words) {
      return Fail(Fmt("trial %d: boundary round trip broke %s", trial, words.ToString().c_str()));
    }
    const auto count_b = [](const LabelSeq &s) {
      return std::count(s.labels.begin(), s.labels.end(), Label::kB);
    };
    if (count_b(words) != count_b(chars)) {
      return Fail(Fmt("trial %d: B count %td vs %td", trial, count_b(words), count_b(chars)));
    }
  }
  return Pass("10000 sequences: word->char->word, bio<->boundaries, B count invariant");
}

Outcome GeometricSampler() {
  constexpr int kDraws = 100000;
  std::string detail;
  for (double p : {0.25, 0.5, 0.75}) {
    AugmentConfig cfg;
    cfg.p_cc = p;
    Rng rng(606, static_cast<std::uint64_t>(p * 100));
    std::vector<int> counts(6, 0);
    for (int k = 0; k < kDraws; ++k) {
      const std::size_t l = SampleLength(cfg, rng);
      if (l <= 5) ++counts[l];
    }
    double worst_z = 0.0;
    for (int l = 1; l <= 5; ++l) {
      const double expected = std::pow(1.0 - p, l - 1) * p;
      const double se = std::sqrt(expected * (1.0 - expected) / kDraws);
      const double z = std::abs(counts[l] / double(kDraws) - expected) / se;
      worst_z = std::max(worst_z, z);
      if (z > 3.0) return Fail(Fmt("p=%.2f l=%d: z=%.2f", p, l, z));
    }
    detail += Fmt("p=%.2f max z %.2f; ", p, worst_z);
  }
  AugmentConfig one;
  one.p_cc = 1.0;
  Rng rng(607);
  for (int k = 0; k < kDraws; ++k) {
    if (SampleLength(one, rng) != 1) return Fail("p_cc=1 produced a length other than 1");
  }
  return Pass(detail + "p=1 always 1");
}

Unit MakeUnit(std::vector<std::string> words, std::vector<std::size_t> seps, bool su) {
  return Unit::FromWords(std::move(words), seps, su);
}

Outcome AugmentationRules() {
  AugmentConfig cfg;
  const Unit joe = MakeUnit({"Joe", "went", "to", "school", "."}, {1, 1, 1, 0, 0}, true);
  const Unit after = MakeUnit({"After", "that", "he", "left", "."}, {1, 1, 1, 0, 0}, true);

  const Unit stripped = ApplyTransform(joe, UnitTransform::kStripPunct, cfg);
  const Unit upper = ApplyTransform(after, UnitTransform::kUpper, cfg);
  if (stripped.text != "Joe went to school" || !stripped.is_su) {
    return Fail("strip produced '" + stripped.text + "'");
  }
  if (upper.text != "AFTER THAT HE LEFT.") {
    return Fail("upper produced '" + upper.text + "'");
  }
  const std::vector<Unit> units = {stripped, upper};
  TrainingExample ex = ConcatUnits(units, 0, 2, cfg);
  if (ex.GoldLabels().ToString() != "BIIIBIIII") {
    return Fail("augmented labels " + ex.GoldLabels().ToString());
  }
  ex = TruncateFirstUnit(ex, 2);
  const std::vector<std::string> want = {"to", "school", "AFTER", "THAT", "HE", "LEFT", "."};
  if (ex.words != want || ex.GoldLabels().ToString() != "OOBIIII") {
    return Fail("truncated labels " + ex.GoldLabels().ToString());
  }

  const Unit really = ApplyTransform(MakeUnit({"Really?!)"}, {0}, true), UnitTransform::kStripPunct, cfg);
  if (really.text != "Really") return Fail("'Really?!)' became '" + really.text + "'");
  const Unit really_split = ApplyTransform(MakeUnit({"Really", "?", "!", ")"}, {0, 0, 0, 0}, true),
                                           UnitTransform::kStripPunct, cfg);
  if (really_split.text != "Really") {
    return Fail("tokenized 'Really?!)' became '" + really_split.text + "'");
  }
  const Unit hello = MakeUnit({"Hello", "world"}, {1, 0}, true);
  if (ApplyTransform(hello, UnitTransform::kStripPunct, cfg).text != "Hello world") {
    return Fail("'Hello world' was modified");
  }
  return Pass("strip, upper-case and head truncation reproduced; 'Really?!)' -> 'Really'; 'Hello world' unchanged");
}

Outcome InterpolationEndpoints() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 30;
    ProbMatrix m = RandomMatrix(rng, n);
    const ProbMatrix uni = RandomMatrix(rng, n);
    m.p_bos_uni = uni.p_bos;
    m.p_eos_uni = uni.p_eos;
    const ProbMatrix at0 = Interpolate(m, {0.0});
    const ProbMatrix at1 = Interpolate(m, {1.0});
    if (at0.p_bos != m.p_bos || at0.p_eos != m.p_eos) return Fail("lambda=0 differs from bi");
    if (at1.p_bos != uni.p_bos || at1.p_eos != uni.p_eos) return Fail("lambda=1 differs from uni");
    const double lambda = u(rng);
    const ProbMatrix mid = Interpolate(m, {lambda});
    for (std::size_t i = 0; i < n; ++i) {
      const double eb = (1.0 - lambda) * m.p_bos[i] + lambda * uni.p_bos[i];
      const double ee = (1.0 - lambda) * m.p_eos[i] + lambda * uni.p_eos[i];
      worst = std::max({worst, std::abs(mid.p_bos[i] - eb), std::abs(mid.p_eos[i] - ee)});
    }
  }
  if (worst > 1e-12) return Fail(Fmt("affinity error %.3g", worst));
  return Pass(Fmt("endpoints exact; affinity error %.2g over 200 matrices", worst));
}

Outcome MetricOracle() {
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t docs = 1 + trial % 4;
    std::vector<std::vector<Label>> gold, pred;
    Evaluator ev(Granularity::kWord);
    for (std::size_t d = 0; d < docs; ++d) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 25)(rng);
      gold.push_back(RandomLabels(rng, n));
      pred.push_back(RandomLabels(rng, n));
      ev.Add({Granularity::kWord, gold.back()}, {Granularity::kWord, pred.back()});
    }
    const EvalReport r = ev.Report();
    const testing::NaiveLabelScores o = testing::NaiveBioScores(gold, pred);
    const testing::NaiveSpanScores s = testing::NaiveSpanF1(gold, pred);
    for (int k = 0; k < 3; ++k) {
      const LabelScore &ls = r.per_label[k];
      if (ls.precision != o.precision[k] || ls.recall != o.recall[k] || ls.f1 != o.f1[k] ||
          ls.support != o.support[k] || r.included[k] != o.present[k]) {
        return Fail(Fmt("trial %d label %d disagrees", trial, k));
      }
    }
    if (r.macro_f1 != o.macro_f1 || r.weighted_f1 != o.weighted_f1) {
      return Fail(Fmt("trial %d: macro %.17g/%.17g weighted %.17g/%.17g", trial, r.macro_f1,
                      o.macro_f1, r.weighted_f1, o.weighted_f1));
    }
    if (r.span_precision != s.precision || r.span_recall != s.recall || r.span_f1 != s.f1) {
      return Fail(Fmt("trial %d: span f1 %.17g vs %.17g", trial, r.span_f1, s.f1));
    }
  }
  const EvalReport hand = BioF1(LabelSeq::FromString("BIO", Granularity::kWord),
                                LabelSeq::FromString("BII", Granularity::kWord));
  if (hand.label(Label::kI).f1 != 2.0 / 3.0) {
    return Fail(Fmt("hand example I-F1 = %.17g", hand.label(Label::kI).f1));
  }
  return Pass("1000 random pairs identical to the oracle; BIO vs BII gives I-F1 = 2/3");
}

std::filesystem::path FindEwt() {
  std::vector<std::filesystem::path> candidates;
  if (const char *env = std::getenv("SENTID_EWT_DIR")) candidates.emplace_back(env);
  candidates.emplace_back("/data/UD_English-EWT");
  candidates.emplace_back("/usr/share/ud/UD_English-EWT");
  for (const auto &dir : candidates) {
    if (std::filesystem::exists(dir / "en_ewt-ud-train.conllu") &&
        std::filesystem::exists(dir / "en_ewt-ud-test.conllu")) {
      return dir;
    }
  }
  return {};
}

Outcome EwtReproduction() {
  const std::filesystem::path dir = FindEwt();
  if (dir.empty()) return Skip("UD English-EWT not found (set SENTID_EWT_DIR)");
  auto convert = [&](const char *file, Split split) {
    std::ifstream in(dir / file);
    return ComputeStats(ConvertTreebank(ParseConllu(in), RelationRuleSet::Default(), split));
  };
  const CorpusStats train = convert("en_ewt-ud-train.conllu", Split::kTrain);
  const CorpusStats test = convert("en_ewt-ud-test.conllu", Split::kTest);
  const struct {
    const char *name;
    double got, want;
  } checks[] = {{"train SUs", double(train.su_count), 10356},
                {"train NSUs", double(train.nsu_count), 2187},
                {"train word O", double(train.word.o), 6939},
                {"test char O", double(test.character.o), 13232}};
  std::string detail;
  bool ok = true;
  for (const auto &c : checks) {
    const double rel = std::abs(c.got - c.want) / c.want;
    detail += Fmt("%s %.0f (%.2f%%); ", c.name, c.got, 100.0 * rel);
    ok = ok && rel <= 0.01;
  }
  return ok ? Pass(detail) : Fail(detail);
}

Outcome SyntheticEndToEnd() {
  const auto start = Clock::now();
  const Corpus train = testing::SyntheticCorpus({.units = 1500, .nsu_rate = 0.3, .seed = 11});
  const Corpus test =
      testing::SyntheticCorpus({.units = 300, .nsu_rate = 0.3, .seed = 12}, Split::kTest);

  PipelineConfig cfg;
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.eval_pcc = {0.0};
  cfg.granularities = {Granularity::kWord};
  cfg.parallel_seeds = true;
  auto run = [&](DecodeMethod method) {
    cfg.method = method;
    return RunPipeline(cfg, train, test);
  };
  const PipelineResult bos_eos = run(DecodeMethod::kBosEos);
  const PipelineResult eos_force = run(DecodeMethod::kEosForce);
  const PipelineResult eos = run(DecodeMethod::kEos);
  const std::string cond = ConditionName(0.0, Granularity::kWord);

  std::string detail;
  for (std::size_t k = 0; k < cfg.seeds.size(); ++k) {
    const EvalReport &a = bos_eos.runs[k].reports.at(cond);
    const EvalReport &f = eos_force.runs[k].reports.at(cond);
    const EvalReport &e = eos.runs[k].reports.at(cond);
    const double o_a = a.label(Label::kO).f1, o_f = f.label(Label::kO).f1;
    detail += Fmt("seed %llu: O-F1 %.1f/%.1f span %.1f/%.1f; ",
                  static_cast<unsigned long long>(cfg.seeds[k]), 100 * o_a, 100 * o_f,
                  100 * a.span_f1, 100 * e.span_f1);
    if (!(o_a > o_f) || !(a.span_f1 > e.span_f1)) return Fail(detail);
  }
  const double secs = Seconds(start);
  if (secs >= 300.0) return Fail(Fmt("took %.1fs; ", secs) + detail);
  return Pass(detail + Fmt("%.1fs", secs));
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 dp oracle equivalence", DpOracle},
      {"2 threshold soundness", ThresholdSoundness},
      {"3 segmentation reduction", SegmentationReduction},
      {"4 nsu additivity", NsuAdditivity},
      {"5 label algebra", LabelAlgebra},
      {"6 geometric sampler", GeometricSampler},
      {"7 augmentation rules", AugmentationRules},
      {"8 interpolation endpoints", InterpolationEndpoints},
      {"9 metric oracle", MetricOracle},
      {"10 ud ewt reproduction", EwtReproduction},
      {"11 synthetic end-to-end", SyntheticEndToEnd},
  };
  int failures = 0;
  for (const auto &[name, check] : criteria) {
    Outcome out;
    try {
      out = check();
    } catch (const std::exception &e) {
      out = Fail(std::string("exception: ") + e.what());
    }
    const char *tag = out.status == Outcome::kPass ? "PASS" : out.status == Outcome::kSkip ? "SKIP" : "FAIL";
    std::printf("%s criterion %s: %s\n", tag, name.c_str(), out.detail.c_str());
    std::fflush(stdout);
    failures += out.status == Outcome::kFail;
  }
  return failures == 0 ? 0 : 1;
}
