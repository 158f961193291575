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

// Command-line front end: convert, train, predict, decode, augment,
// evaluate and the end-to-end pipeline.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sentid/augment.h"
#include "sentid/conllu.h"
#include "sentid/corpus.h"
#include "sentid/decode.h"
#include "sentid/error.h"
#include "sentid/eval.h"
#include "sentid/model.h"
#include "sentid/pipeline.h"
#include "sentid/probs.h"

namespace fs = std::filesystem;
using sentid::ErrorKind;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::ifstream OpenIn(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sentid::Error(ErrorKind::kData, "cannot open " + path);
  return in;
}

// Writes to `path`, or stdout for "-" / empty.
void Emit(const std::string &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sentid::Error(ErrorKind::kData, "cannot write " + path);
  out << text;
}

std::string Slurp(const std::string &path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in = OpenIn(path);
    buf << in.rdbuf();
  }
  return buf.str();
}

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

sentid::Corpus LoadCorpus(const std::string &path) {
  std::ifstream in = OpenIn(path);
  return sentid::ReadCorpus(in);
}

sentid::RelationRuleSet LoadRules(const std::string &spec) {
  if (spec == "default") return sentid::RelationRuleSet::Default();
  return sentid::RelationRuleSet::FromJson(Slurp(spec));
}

std::vector<fs::path> ConlluInputs(const std::string &input) {
  std::vector<fs::path> files;
  if (fs::is_directory(input)) {
    for (const auto &entry : fs::directory_iterator(input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".conllu") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw sentid::Error(ErrorKind::kData, "no .conllu files in " + input);
  } else {
    files.emplace_back(input);
  }
  return files;
}

// Gold documents from either training examples ("bos"/"eos" keys) or a
// corpus (one document per unit).
std::vector<sentid::GoldDocument> LoadGold(const std::string &path) {
  std::vector<sentid::GoldDocument> docs;
  for (const std::string &line : Lines(Slurp(path))) {
    nlohmann::json probe;
    try {
      probe = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &e) {
      throw sentid::ParseError(std::string("gold record: ") + e.what(), docs.size() + 1);
    }
    if (probe.contains("bos")) {
      docs.push_back(sentid::GoldDocument::FromExample(sentid::TrainingExample::FromJson(line)));
    } else {
      std::istringstream one(line + "\n");
      const sentid::Corpus c = sentid::ReadCorpus(one);
      docs.push_back(sentid::GoldDocument::FromUnit(c.units.at(0)));
    }
  }
  return docs;
}

// Word sequences to predict on: any JSONL whose records carry "words".
std::vector<std::vector<std::string>> LoadDocuments(const std::string &path) {
  std::vector<std::vector<std::string>> docs;
  std::size_t line_no = 0;
  for (const std::string &line : Lines(Slurp(path))) {
    ++line_no;
    try {
      docs.push_back(nlohmann::json::parse(line).at("words").get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception &e) {
      throw sentid::ParseError(std::string("document record: ") + e.what(), line_no);
    }
  }
  return docs;
}

struct ConvertArgs {
  std::string input, rules = "default", output, stats, split = "train";
};

void RunConvert(const ConvertArgs &a) {
  const sentid::RelationRuleSet rules = LoadRules(a.rules);
  const sentid::Split split = sentid::ParseSplit(a.split);
  sentid::Corpus corpus;
  corpus.split = split;
  for (const fs::path &file : ConlluInputs(a.input)) {
    std::ifstream in = OpenIn(file.string());
    sentid::Corpus part;
    try {
      part = sentid::ConvertTreebank(sentid::ParseConllu(in), rules, split);
    } catch (const sentid::ParseError &e) {
      throw sentid::ParseError(file.string() + ": " + e.what());
    }
    for (auto &u : part.units) corpus.units.push_back(std::move(u));
  }
  std::ostringstream out;
  sentid::WriteCorpus(corpus, out);
  Emit(a.output, out.str());
  const std::string stats = sentid::ComputeStats(corpus).ToJson() + "\n";
  if (!a.stats.empty()) {
    Emit(a.stats, stats);
  } else {
    std::cerr << stats;
  }
}

struct TrainArgs {
  std::string corpus, out;
  int epochs = 5, window = 5;
  std::uint64_t seed = 0;
  bool uni = false;
  double pcc = 0.5, pda = 0.3, ptr = 0.1;
  std::size_t max_tokens = 512;
};

void RunTrain(const TrainArgs &a) {
  sentid::TrainConfig cfg;
  cfg.epochs = a.epochs;
  cfg.seed = a.seed;
  cfg.uni = a.uni;
  cfg.features.window = a.window;
  cfg.augment.p_cc = a.pcc;
  cfg.augment.p_da = a.pda;
  cfg.augment.p_tr = a.ptr;
  cfg.augment.max_tokens = a.max_tokens;
  cfg.Validate();
  const sentid::ClassifierModel model = sentid::Train(LoadCorpus(a.corpus), cfg);
  std::ostringstream out;
  model.Save(out);
  Emit(a.out, out.str());
}

struct PredictArgs {
  std::string model, input, out;
  bool uni = false;
};

void RunPredict(const PredictArgs &a) {
  std::ifstream in = OpenIn(a.model);
  const sentid::ClassifierModel model = sentid::ClassifierModel::Load(in);
  if (a.uni && !model.has_uni()) {
    throw sentid::ConfigError("--uni requires a model trained with --uni");
  }
  std::vector<sentid::ProbDocument> docs;
  for (auto &words : LoadDocuments(a.input)) {
    sentid::ProbMatrix m = sentid::Predict(model, words, a.uni);
    docs.push_back({std::move(words), std::move(m)});
  }
  std::ostringstream out;
  sentid::WriteProbDocuments(docs, out);
  Emit(a.out, out.str());
}

struct DecodeArgs {
  std::string probs, method = "bosEos", out;
  double threshold = 0.1, lambda = 0.5;
};

void RunDecode(const DecodeArgs &a) {
  sentid::DecoderConfig cfg;
  cfg.candidate_threshold = a.threshold;
  cfg.Validate();
  const sentid::InterpConfig interp{a.lambda};
  interp.Validate();
  const sentid::DecodeMethod method = sentid::ParseDecodeMethod(a.method);
  std::istringstream in(Slurp(a.probs));
  std::vector<sentid::SpanResult> results;
  for (const sentid::ProbDocument &doc : sentid::ReadProbDocuments(in)) {
    const sentid::ProbMatrix m = doc.probs.has_uni() ? sentid::Interpolate(doc.probs, interp)
                                                     : doc.probs;
    results.push_back(sentid::Decode(m, method, cfg));
  }
  std::ostringstream out;
  sentid::WriteSpanResults(results, out);
  Emit(a.out, out.str());
}

struct AugmentArgs {
  std::string corpus, out;
  double pcc = 0.5, pda = 0.3, ptr = 0.1;
  std::uint64_t seed = 0;
  std::size_t count = 0, max_tokens = 512;
};

void RunAugment(const AugmentArgs &a) {
  sentid::AugmentConfig cfg;
  cfg.p_cc = a.pcc;
  cfg.p_da = a.pda;
  cfg.p_tr = a.ptr;
  cfg.seed = a.seed;
  cfg.max_tokens = a.max_tokens;
  cfg.Validate();
  const sentid::Corpus corpus = LoadCorpus(a.corpus);
  const std::vector<sentid::TrainingExample> examples =
      a.count == 0 ? sentid::GenerateEpoch(corpus, cfg, 0)
                   : sentid::GenerateExamples(corpus, cfg, a.count);
  std::ostringstream out;
  for (const auto &ex : examples) out << ex.ToJson() << '\n';
  Emit(a.out, out.str());
}

struct EvaluateArgs {
  std::string gold, pred, granularity = "word", aggregate, out;
};

std::vector<sentid::EvalReport> CollectReports(const std::string &dir, sentid::Granularity g) {
  std::vector<fs::path> files;
  const std::string suffix = "." + std::string(sentid::GranularityName(g)) + ".report.json";
  for (const auto &entry : fs::recursive_directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<sentid::EvalReport> reports;
  for (const fs::path &f : files) reports.push_back(sentid::EvalReport::FromJson(Slurp(f.string())));
  if (reports.empty()) throw sentid::Error(ErrorKind::kData, "no " + suffix + " files under " + dir);
  return reports;
}

void RunEvaluate(const EvaluateArgs &a) {
  const sentid::Granularity g = sentid::ParseGranularity(a.granularity);
  if (g == sentid::Granularity::kSubword) {
    throw sentid::ConfigError("--granularity must be word or char");
  }
  if (!a.aggregate.empty()) {
    const std::vector<sentid::EvalReport> reports = CollectReports(a.aggregate, g);
    const sentid::AggregateReport agg = sentid::Aggregate(reports);
    Emit(a.out, agg.ToJson() + "\n");
    std::cerr << agg.ToTable();
    return;
  }
  if (a.gold.empty() || a.pred.empty()) {
    throw sentid::ConfigError("--gold and --pred are required unless --aggregate is given");
  }
  const std::vector<sentid::GoldDocument> gold = LoadGold(a.gold);
  std::istringstream pin(Slurp(a.pred));
  const std::vector<sentid::SpanResult> pred = sentid::ReadSpanResults(pin);
  if (gold.size() != pred.size()) {
    throw sentid::FormatError("gold has " + std::to_string(gold.size()) +
                              " documents but predictions have " + std::to_string(pred.size()));
  }
  sentid::Evaluator ev(g);
  for (std::size_t d = 0; d < gold.size(); ++d) {
    if (pred[d].labels.size() != gold[d].labels.size()) {
      throw sentid::FormatError("document " + std::to_string(d) + ": prediction has " +
                                std::to_string(pred[d].labels.size()) + " labels, gold has " +
                                std::to_string(gold[d].labels.size()));
    }
    ev.Add(sentid::ConvertLabels(gold[d].labels, gold[d], g),
           sentid::ConvertLabels(pred[d].labels, gold[d], g));
  }
  const sentid::EvalReport report = ev.Report();
  Emit(a.out, report.ToJson() + "\n");
  std::cerr << report.ToTable();
}

struct PipelineArgs {
  std::string config, output_dir, method;
  std::vector<std::uint64_t> seeds;
  bool parallel = false;
};

void RunPipelineCommand(const PipelineArgs &a) {
  sentid::PipelineConfig cfg = sentid::LoadConfig(a.config);
  if (!a.output_dir.empty()) cfg.paths.output_dir = a.output_dir;
  if (!a.seeds.empty()) cfg.seeds = a.seeds;
  if (!a.method.empty()) cfg.method = sentid::ParseDecodeMethod(a.method);
  if (a.parallel) cfg.parallel_seeds = true;
  cfg.Validate();
  const sentid::PipelineResult result = sentid::RunPipeline(cfg);
  for (const auto &[name, agg] : result.aggregates) {
    std::cout << "== " << name << " (" << agg.runs << " run" << (agg.runs == 1 ? "" : "s")
              << ")\n"
              << agg.ToTable();
  }
}

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return kExitUsage;
    case ErrorKind::kData:
      return kExitData;
    case ErrorKind::kInternal:
      return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sentence identification toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sentid 0.1.0");

  ConvertArgs convert;
  auto *c = app.add_subcommand("convert", "Convert CoNLL-U treebanks into an SU/NSU corpus");
  c->add_option("--input", convert.input, "CoNLL-U file or directory")->required();
  c->add_option("--rules", convert.rules, "Relation rule JSON, or 'default'");
  c->add_option("--output", convert.output, "Corpus JSONL ('-' for stdout)")->required();
  c->add_option("--stats", convert.stats, "Write corpus statistics JSON here");
  c->add_option("--split", convert.split, "train, dev or test");

  TrainArgs train;
  auto *t = app.add_subcommand("train", "Train BOS/EOS classifiers on a corpus");
  t->add_option("--corpus", train.corpus)->required();
  t->add_option("--out", train.out)->required();
  t->add_option("--epochs", train.epochs);
  t->add_option("--seed", train.seed);
  t->add_option("--window", train.window);
  t->add_flag("--uni", train.uni, "Also train unidirectional heads");
  t->add_option("--pcc", train.pcc);
  t->add_option("--pda", train.pda);
  t->add_option("--ptr", train.ptr);
  t->add_option("--max-tokens", train.max_tokens);

  PredictArgs predict;
  auto *p = app.add_subcommand("predict", "Write per-token BOS/EOS probabilities");
  p->add_option("--model", predict.model)->required();
  p->add_option("--input", predict.input, "JSONL documents with a \"words\" array")->required();
  p->add_option("--out", predict.out);
  p->add_flag("--uni", predict.uni, "Include unidirectional columns");

  DecodeArgs decode;
  auto *d = app.add_subcommand("decode", "Extract SU spans from a probability file");
  d->add_option("--probs", decode.probs, "Probability file or '-'")->required();
  d->add_option("--method", decode.method, "eos, eos-force or bosEos");
  d->add_option("--threshold", decode.threshold, "Candidate threshold c");
  d->add_option("--lambda", decode.lambda, "Interpolation weight of unidirectional columns");
  d->add_option("--out", decode.out);

  AugmentArgs augment;
  auto *g = app.add_subcommand("augment", "Generate concatenated, augmented examples");
  g->add_option("--corpus", augment.corpus)->required();
  g->add_option("--pcc", augment.pcc);
  g->add_option("--pda", augment.pda);
  g->add_option("--ptr", augment.ptr);
  g->add_option("--seed", augment.seed);
  g->add_option("--count", augment.count, "Number of examples (0: one pass)");
  g->add_option("--max-tokens", augment.max_tokens);
  g->add_option("--out", augment.out);

  EvaluateArgs evaluate;
  auto *e = app.add_subcommand("evaluate", "Score predicted spans against gold");
  e->add_option("--gold", evaluate.gold, "Examples or corpus JSONL");
  e->add_option("--pred", evaluate.pred, "Span JSONL");
  e->add_option("--granularity", evaluate.granularity, "word or char");
  e->add_option("--aggregate", evaluate.aggregate, "Aggregate the reports under a run directory");
  e->add_option("--out", evaluate.out);

  PipelineArgs pipeline;
  auto *r = app.add_subcommand("pipeline", "Train, decode and evaluate for every seed");
  r->add_option("--config", pipeline.config)->required();
  r->add_option("--output-dir", pipeline.output_dir);
  r->add_option("--seed", pipeline.seeds, "Override the configured seeds");
  r->add_option("--method", pipeline.method);
  r->add_flag("--parallel-seeds", pipeline.parallel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (c->parsed()) RunConvert(convert);
    if (t->parsed()) RunTrain(train);
    if (p->parsed()) RunPredict(predict);
    if (d->parsed()) RunDecode(decode);
    if (g->parsed()) RunAugment(augment);
    if (e->parsed()) RunEvaluate(evaluate);
    if (r->parsed()) RunPipelineCommand(pipeline);
  } catch (const sentid::Error &err) {
    std::cerr << "sentid: " << err.what() << '\n';
    return ExitCode(err.kind());
  } catch (const std::exception &err) {
    std::cerr << "sentid: internal error: " << err.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
