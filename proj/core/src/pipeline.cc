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

#include "sentid/pipeline.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sentid/error.h"

namespace sentid {

namespace {

using Json = nlohmann::json;

void CheckKeys(const Json &obj, const std::string &path, const std::set<std::string> &allowed) {
  if (!obj.is_object()) {
    throw ConfigError((path.empty() ? std::string("config") : path) + ": expected an object");
  }
  for (const auto &[key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + (path.empty() ? key : path + "." + key) + "'");
    }
  }
}

// Reads obj[key] into *out when present, reporting type errors by path.
template <typename T>
void Read(const Json &obj, const std::string &path, const char *key, T *out) {
  if (!obj.contains(key)) return;
  try {
    *out = obj.at(key).get<T>();
  } catch (const Json::exception &) {
    throw ConfigError("'" + path + "." + key + "' has the wrong type");
  }
}

template <typename F>
void AtPath(const std::string &path, F &&check) {
  try {
    check();
  } catch (const ConfigError &e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string FormatPcc(double pcc) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", pcc);
  return buf;
}

template <typename F>
auto Stage(const std::string &name, F &&body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error &e) {
    throw Error(e.kind(), "stage '" + name + "': " + e.what());
  } catch (const std::exception &e) {
    throw Error(ErrorKind::kInternal, "stage '" + name + "': " + e.what());
  }
}

void WriteText(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kData, "cannot write " + path.string());
  out << text;
}

Corpus LoadCorpusFile(const std::string &path, Split split) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kData, "cannot open corpus " + path);
  return ReadCorpus(in, split);
}

Corpus ConvertFile(const std::string &path, const RelationRuleSet &rules, Split split) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kData, "cannot open treebank " + path);
  return ConvertTreebank(ParseConllu(in), rules, split);
}

RunResult RunSeed(const PipelineConfig &cfg, const Corpus &train, const Corpus &test,
                  std::uint64_t seed) {
  const std::filesystem::path dir =
      cfg.paths.output_dir.empty()
          ? std::filesystem::path()
          : std::filesystem::path(cfg.paths.output_dir) / ("seed-" + std::to_string(seed));
  if (!dir.empty()) std::filesystem::create_directories(dir);

  TrainConfig train_cfg = cfg.model;
  train_cfg.augment = cfg.augment;
  train_cfg.seed = seed;
  const ClassifierModel model = Stage("train", [&] { return Train(train, train_cfg); });
  if (!dir.empty()) {
    Stage("train", [&] {
      std::ofstream out(dir / "model.bin", std::ios::binary);
      model.Save(out);
    });
  }

  RunResult run;
  run.seed = seed;
  for (double pcc : cfg.eval_pcc) {
    const std::string tag = "pcc-" + FormatPcc(pcc);
    const std::vector<TrainingExample> docs = Stage("assemble", [&] {
      AugmentConfig eval_cfg = cfg.augment;
      eval_cfg.p_cc = pcc;
      eval_cfg.p_da = 0.0;
      eval_cfg.p_tr = 0.0;
      eval_cfg.seed = seed;
      return GenerateEpoch(test, eval_cfg, 0);
    });

    std::vector<ProbDocument> probs = Stage("predict", [&] {
      std::vector<ProbDocument> out;
      out.reserve(docs.size());
      for (const TrainingExample &doc : docs) {
        ProbMatrix m = Predict(model, doc.words, cfg.model.uni);
        out.push_back({doc.words, std::move(m)});
      }
      return out;
    });

    const std::vector<SpanResult> spans = Stage("decode", [&] {
      std::vector<SpanResult> out;
      out.reserve(probs.size());
      for (const ProbDocument &doc : probs) {
        const ProbMatrix m = doc.probs.has_uni() ? Interpolate(doc.probs, cfg.interp) : doc.probs;
        out.push_back(Decode(m, cfg.method, cfg.decoder));
      }
      return out;
    });

    Stage("evaluate", [&] {
      for (Granularity g : cfg.granularities) {
        Evaluator ev(g);
        for (std::size_t d = 0; d < docs.size(); ++d) {
          const GoldDocument gold = GoldDocument::FromExample(docs[d]);
          ev.Add(ConvertLabels(gold.labels, gold, g), ConvertLabels(spans[d].labels, gold, g));
        }
        run.reports[ConditionName(pcc, g)] = ev.Report();
      }
    });

    if (!dir.empty()) {
      Stage("write", [&] {
        std::ostringstream ex, pr, sp;
        for (const TrainingExample &doc : docs) ex << doc.ToJson() << '\n';
        WriteProbDocuments(probs, pr);
        WriteSpanResults(spans, sp);
        WriteText(dir / (tag + ".examples.jsonl"), ex.str());
        WriteText(dir / (tag + ".probs"), pr.str());
        WriteText(dir / (tag + ".spans.jsonl"), sp.str());
        for (Granularity g : cfg.granularities) {
          WriteText(dir / (tag + "." + std::string(GranularityName(g)) + ".report.json"),
                    run.reports.at(ConditionName(pcc, g)).ToJson());
        }
      });
    }
  }
  return run;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (seeds.empty()) throw ConfigError("seeds: at least one seed is required");
  AtPath("augment", [&] { augment.Validate(); });
  AtPath("model", [&] { model.Validate(); });
  AtPath("interp", [&] { interp.Validate(); });
  AtPath("decoder", [&] { decoder.Validate(); });
  if (eval_pcc.empty()) throw ConfigError("evaluation.p_cc: at least one value is required");
  for (double p : eval_pcc) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("evaluation.p_cc: values must lie in [0,1]");
  }
  if (granularities.empty()) throw ConfigError("evaluation.granularities: must not be empty");
  for (Granularity g : granularities) {
    if (g == Granularity::kSubword) {
      throw ConfigError("evaluation.granularities: only word and char are supported");
    }
  }
}

PipelineConfig ParseConfig(std::string_view json) {
  Json doc;
  try {
    doc = Json::parse(json);
  } catch (const Json::parse_error &e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  CheckKeys(doc, "", {"version", "paths", "rules", "augment", "model", "interp", "decoder",
                      "evaluation", "method", "seeds", "parallel_seeds"});
  if (!doc.contains("version")) throw ConfigError("missing key 'version'");
  if (!doc.at("version").is_number_integer() ||
      doc.at("version").get<int>() != PipelineConfig::kVersion) {
    throw ConfigError("version: only version " + std::to_string(PipelineConfig::kVersion) +
                      " is supported");
  }
  if (!doc.contains("seeds")) throw ConfigError("missing key 'seeds'");

  PipelineConfig cfg;
  if (doc.contains("paths")) {
    const Json &p = doc.at("paths");
    CheckKeys(p, "paths", {"train_treebank", "test_treebank", "train_corpus", "test_corpus",
                           "output_dir"});
    Read(p, "paths", "train_treebank", &cfg.paths.train_treebank);
    Read(p, "paths", "test_treebank", &cfg.paths.test_treebank);
    Read(p, "paths", "train_corpus", &cfg.paths.train_corpus);
    Read(p, "paths", "test_corpus", &cfg.paths.test_corpus);
    Read(p, "paths", "output_dir", &cfg.paths.output_dir);
  }
  if (doc.contains("rules")) {
    const Json &r = doc.at("rules");
    if (r.is_string() && r.get<std::string>() == "default") {
      cfg.rules = RelationRuleSet::Default();
    } else if (r.is_string()) {
      AtPath("rules", [&] { cfg.rules = RelationRuleSet::FromJson(ReadFile(r.get<std::string>())); });
    } else {
      AtPath("rules", [&] { cfg.rules = RelationRuleSet::FromJson(r.dump()); });
    }
  }
  if (doc.contains("augment")) {
    const Json &a = doc.at("augment");
    CheckKeys(a, "augment",
              {"p_cc", "p_da", "p_tr", "max_tokens", "punct", "end_punct", "transform_weights"});
    Read(a, "augment", "p_cc", &cfg.augment.p_cc);
    Read(a, "augment", "p_da", &cfg.augment.p_da);
    Read(a, "augment", "p_tr", &cfg.augment.p_tr);
    Read(a, "augment", "max_tokens", &cfg.augment.max_tokens);
    Read(a, "augment", "punct", &cfg.augment.punct);
    Read(a, "augment", "end_punct", &cfg.augment.end_punct);
    Read(a, "augment", "transform_weights", &cfg.augment.transform_weights);
  }
  if (doc.contains("model")) {
    const Json &m = doc.at("model");
    CheckKeys(m, "model", {"epochs", "learning_rate", "decay", "uni", "window", "min_ngram",
                           "max_ngram", "hash_bits"});
    Read(m, "model", "epochs", &cfg.model.epochs);
    Read(m, "model", "learning_rate", &cfg.model.learning_rate);
    Read(m, "model", "decay", &cfg.model.decay);
    Read(m, "model", "uni", &cfg.model.uni);
    Read(m, "model", "window", &cfg.model.features.window);
    Read(m, "model", "min_ngram", &cfg.model.features.min_ngram);
    Read(m, "model", "max_ngram", &cfg.model.features.max_ngram);
    Read(m, "model", "hash_bits", &cfg.model.features.hash_bits);
  }
  cfg.model.features.punct = cfg.augment.punct;
  cfg.model.features.end_punct = cfg.augment.end_punct;
  if (doc.contains("interp")) {
    const Json &i = doc.at("interp");
    CheckKeys(i, "interp", {"lambda"});
    Read(i, "interp", "lambda", &cfg.interp.lambda);
  }
  if (doc.contains("decoder")) {
    const Json &d = doc.at("decoder");
    CheckKeys(d, "decoder", {"threshold", "prob_floor"});
    Read(d, "decoder", "threshold", &cfg.decoder.candidate_threshold);
    Read(d, "decoder", "prob_floor", &cfg.decoder.prob_floor);
  }
  if (doc.contains("evaluation")) {
    const Json &e = doc.at("evaluation");
    CheckKeys(e, "evaluation", {"p_cc", "granularities"});
    Read(e, "evaluation", "p_cc", &cfg.eval_pcc);
    if (e.contains("granularities")) {
      std::vector<std::string> names;
      Read(e, "evaluation", "granularities", &names);
      cfg.granularities.clear();
      AtPath("evaluation.granularities", [&] {
        for (const auto &n : names) cfg.granularities.push_back(ParseGranularity(n));
      });
    }
  }
  if (doc.contains("method")) {
    std::string name;
    Read(doc, "config", "method", &name);
    AtPath("method", [&] { cfg.method = ParseDecodeMethod(name); });
  }
  Read(doc, "config", "seeds", &cfg.seeds);
  Read(doc, "config", "parallel_seeds", &cfg.parallel_seeds);
  cfg.Validate();
  return cfg;
}

PipelineConfig LoadConfig(const std::filesystem::path &path) {
  return ParseConfig(ReadFile(path));
}

std::string ConditionName(double eval_pcc, Granularity g) {
  return "pcc=" + FormatPcc(eval_pcc) + "/" + std::string(GranularityName(g));
}

std::string PipelineResult::ToJson() const {
  Json runs_json = Json::array();
  for (const RunResult &run : runs) {
    Json reports = Json::object();
    for (const auto &[name, report] : run.reports) reports[name] = Json::parse(report.ToJson());
    runs_json.push_back({{"seed", run.seed}, {"reports", reports}});
  }
  Json agg = Json::object();
  for (const auto &[name, report] : aggregates) agg[name] = Json::parse(report.ToJson());
  return Json{{"runs", runs_json}, {"aggregates", agg}}.dump(2);
}

PipelineResult RunPipeline(const PipelineConfig &cfg, const Corpus &train, const Corpus &test) {
  cfg.Validate();
  PipelineResult result;
  if (cfg.parallel_seeds && cfg.seeds.size() > 1) {
    std::vector<std::future<RunResult>> futures;
    for (std::uint64_t seed : cfg.seeds) {
      futures.push_back(std::async(std::launch::async,
                                   [&, seed] { return RunSeed(cfg, train, test, seed); }));
    }
    for (auto &f : futures) result.runs.push_back(f.get());
  } else {
    for (std::uint64_t seed : cfg.seeds) result.runs.push_back(RunSeed(cfg, train, test, seed));
  }

  for (double pcc : cfg.eval_pcc) {
    for (Granularity g : cfg.granularities) {
      const std::string name = ConditionName(pcc, g);
      std::vector<EvalReport> reports;
      for (const RunResult &run : result.runs) reports.push_back(run.reports.at(name));
      result.aggregates[name] = Aggregate(reports);
    }
  }
  if (!cfg.paths.output_dir.empty()) {
    Stage("write", [&] { WriteText(std::filesystem::path(cfg.paths.output_dir) / "aggregate.json",
                                   result.ToJson()); });
  }
  return result;
}

PipelineResult RunPipeline(const PipelineConfig &cfg) {
  cfg.Validate();
  const std::filesystem::path out_dir(cfg.paths.output_dir);
  if (!cfg.paths.output_dir.empty()) std::filesystem::create_directories(out_dir);

  auto load = [&](const std::string &treebank, const std::string &corpus, Split split) {
    const std::string stage = std::string("load ") + std::string(SplitName(split));
    return Stage(stage, [&] {
      Corpus c;
      if (!treebank.empty()) {
        c = ConvertFile(treebank, cfg.rules, split);
        if (!cfg.paths.output_dir.empty()) {
          std::ofstream out(out_dir / (std::string(SplitName(split)) + ".corpus.jsonl"));
          WriteCorpus(c, out);
        }
      } else if (!corpus.empty()) {
        c = LoadCorpusFile(corpus, split);
      } else {
        throw ConfigError("no treebank or corpus path for the " + std::string(SplitName(split)) +
                          " split");
      }
      return c;
    });
  };
  const Corpus train = load(cfg.paths.train_treebank, cfg.paths.train_corpus, Split::kTrain);
  const Corpus test = load(cfg.paths.test_treebank, cfg.paths.test_corpus, Split::kTest);
  return RunPipeline(cfg, train, test);
}

}  // namespace sentid
