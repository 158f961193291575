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

#include "sentid/probs.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string_view>

#include "sentid/error.h"

namespace sentid {

namespace {

void CheckVector(const std::vector<double> &v, std::size_t n, const char *name) {
  if (v.size() != n) {
    throw ValidationError(std::string(name) + " has length " + std::to_string(v.size()) +
                          ", expected " + std::to_string(n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(v[k] >= 0.0 && v[k] <= 1.0)) {
      throw ValidationError(std::string(name) + "[" + std::to_string(k) +
                            "] = " + std::to_string(v[k]) + " is outside [0,1]");
    }
  }
}

std::string FormatProb(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", p);
  return buf;
}

std::string SanitizeToken(const std::string &token) {
  std::string out = token;
  for (char &c : out) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double ParseProb(std::string_view field, std::size_t line_no) {
  const std::string text(field);
  char *end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ParseError("'" + text + "' is not a number", line_no);
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError("row at line " + std::to_string(line_no) + ": probability " + text +
                          " is outside [0,1]");
  }
  return value;
}

}  // namespace

void ProbMatrix::Validate() const {
  const std::size_t n = p_bos.size();
  CheckVector(p_bos, n, "p_bos");
  CheckVector(p_eos, n, "p_eos");
  if (p_bos_uni.has_value() != p_eos_uni.has_value()) {
    throw ValidationError("unidirectional BOS and EOS vectors must be present together");
  }
  if (p_bos_uni) CheckVector(*p_bos_uni, n, "p_bos_uni");
  if (p_eos_uni) CheckVector(*p_eos_uni, n, "p_eos_uni");
}

void InterpConfig::Validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw ConfigError("lambda must lie in [0,1], got " + std::to_string(lambda));
  }
}

ProbMatrix Interpolate(const ProbMatrix &m, const InterpConfig &cfg) {
  cfg.Validate();
  if (!m.has_uni()) {
    throw ValidationError("interpolation needs unidirectional probabilities");
  }
  const double lambda = cfg.lambda;
  ProbMatrix out;
  out.p_bos.resize(m.size());
  out.p_eos.resize(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    out.p_bos[k] = lambda * (*m.p_bos_uni)[k] + (1.0 - lambda) * m.p_bos[k];
    out.p_eos[k] = lambda * (*m.p_eos_uni)[k] + (1.0 - lambda) * m.p_eos[k];
  }
  return out;
}

void WriteProbDocuments(std::span<const ProbDocument> docs, std::ostream &out) {
  const bool uni = !docs.empty() && docs.front().probs.has_uni();
  out << "#probs v1 uni=" << (uni ? 1 : 0) << '\n';
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const ProbMatrix &m = docs[d].probs;
    if (m.has_uni() != uni) {
      throw ValidationError("all documents in a probability file must agree on uni");
    }
    if (docs[d].tokens.size() != m.size()) {
      throw ValidationError("document " + std::to_string(d) + " has " +
                            std::to_string(docs[d].tokens.size()) + " tokens but " +
                            std::to_string(m.size()) + " probability rows");
    }
    out << "#doc " << d << '\n';
    for (std::size_t k = 0; k < m.size(); ++k) {
      out << k << '\t' << SanitizeToken(docs[d].tokens[k]) << '\t' << FormatProb(m.p_bos[k])
          << '\t' << FormatProb(m.p_eos[k]);
      if (uni) {
        out << '\t' << FormatProb((*m.p_bos_uni)[k]) << '\t' << FormatProb((*m.p_eos_uni)[k]);
      }
      out << '\n';
    }
  }
}

std::vector<ProbDocument> ReadProbDocuments(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing '#probs v1' header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool uni = false;
  if (line == "#probs v1 uni=1") {
    uni = true;
  } else if (line != "#probs v1 uni=0") {
    throw ParseError("expected header '#probs v1 uni=<0|1>', got '" + line + "'", 1);
  }
  const std::size_t columns = uni ? 6 : 4;

  std::vector<ProbDocument> docs;
  auto start_doc = [&] {
    ProbDocument doc;
    if (uni) {
      doc.probs.p_bos_uni.emplace();
      doc.probs.p_eos_uni.emplace();
    }
    docs.push_back(std::move(doc));
  };

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("#doc")) {
      start_doc();
      continue;
    }
    if (line.front() == '#') continue;
    if (docs.empty()) start_doc();
    ProbDocument &doc = docs.back();
    const auto fields = SplitTabs(line);
    if (fields.size() != columns) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(columns) + " columns, found " +
                        std::to_string(fields.size()));
    }
    if (fields[0] != std::to_string(doc.tokens.size())) {
      throw FormatError("line " + std::to_string(line_no) + ": expected index " +
                        std::to_string(doc.tokens.size()) + ", found '" + std::string(fields[0]) +
                        "'");
    }
    doc.tokens.emplace_back(fields[1]);
    doc.probs.p_bos.push_back(ParseProb(fields[2], line_no));
    doc.probs.p_eos.push_back(ParseProb(fields[3], line_no));
    if (uni) {
      doc.probs.p_bos_uni->push_back(ParseProb(fields[4], line_no));
      doc.probs.p_eos_uni->push_back(ParseProb(fields[5], line_no));
    }
  }
  return docs;
}

ProbMatrix LoadProbs(std::istream &in) {
  std::vector<ProbDocument> docs = ReadProbDocuments(in);
  if (docs.size() > 1) {
    throw FormatError("expected a single document, found " + std::to_string(docs.size()));
  }
  if (docs.empty()) return {};
  return std::move(docs.front().probs);
}

}  // namespace sentid
