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

#include "sentid/corpus.h"

#include <string>

#include "json.hpp"
#include "sentid/error.h"
#include "sentid/labels.h"
#include "sentid/utf8.h"

namespace sentid {

std::vector<std::size_t> Unit::Separators() const {
  std::vector<std::size_t> seps(char_offsets.size(), 0);
  for (std::size_t k = 0; k + 1 < char_offsets.size(); ++k) {
    seps[k] = char_offsets[k + 1].begin - char_offsets[k].end;
  }
  return seps;
}

Unit Unit::FromWords(std::vector<std::string> words, const std::vector<std::size_t> &separators,
                     bool is_su) {
  Unit unit;
  unit.is_su = is_su;
  std::size_t pos = 0;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const std::size_t len = utf8::Length(words[k]);
    unit.text += words[k];
    unit.char_offsets.push_back({pos, pos + len});
    pos += len;
    if (k + 1 < words.size()) {
      const std::size_t sep = k < separators.size() ? separators[k] : 1;
      unit.text.append(sep, ' ');
      pos += sep;
    }
  }
  unit.words = std::move(words);
  return unit;
}

void Unit::Validate() const {
  if (words.size() != char_offsets.size()) {
    throw ValidationError("unit has " + std::to_string(words.size()) + " words but " +
                          std::to_string(char_offsets.size()) + " offsets");
  }
  const std::vector<std::size_t> cp = utf8::CodePointOffsets(text);
  const std::size_t n_chars = cp.size() - 1;
  std::size_t prev_end = 0;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const CharSpan &s = char_offsets[k];
    if (s.begin < prev_end || s.begin > s.end || s.end > n_chars) {
      throw ValidationError("offsets of word " + std::to_string(k) +
                            " overlap, go backwards or leave the text");
    }
    const std::string_view slice =
        std::string_view(text).substr(cp[s.begin], cp[s.end] - cp[s.begin]);
    if (slice != words[k]) {
      throw ValidationError("word " + std::to_string(k) + " '" + words[k] +
                            "' does not match text slice '" + std::string(slice) + "'");
    }
    prev_end = s.end;
  }
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "?";
}

Split ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw ConfigError("unknown split '" + std::string(name) + "'");
}

std::size_t Corpus::WordCount() const {
  std::size_t n = 0;
  for (const Unit &u : units) n += u.words.size();
  return n;
}

std::vector<std::size_t> Corpus::Boundaries() const {
  std::vector<std::size_t> b{0};
  for (const Unit &u : units) b.push_back(b.back() + u.words.size());
  return b;
}

LabelCounts &LabelCounts::operator+=(const LabelCounts &other) {
  b += other.b;
  i += other.i;
  o += other.o;
  return *this;
}

CorpusStats &CorpusStats::operator+=(const CorpusStats &other) {
  su_count += other.su_count;
  nsu_count += other.nsu_count;
  word += other.word;
  character += other.character;
  return *this;
}

namespace {

nlohmann::json CountsJson(const LabelCounts &c) {
  return {{"B", c.b}, {"I", c.i}, {"O", c.o}};
}

LabelCounts Count(const LabelSeq &seq) {
  LabelCounts c;
  for (Label l : seq.labels) {
    switch (l) {
      case Label::kB:
        ++c.b;
        break;
      case Label::kI:
        ++c.i;
        break;
      case Label::kO:
        ++c.o;
        break;
    }
  }
  return c;
}

}  // namespace

std::string CorpusStats::ToJson() const {
  nlohmann::json doc = {{"su_count", su_count},
                        {"nsu_count", nsu_count},
                        {"word", CountsJson(word)},
                        {"char", CountsJson(character)}};
  return doc.dump(2);
}

Unit UnitFromSentence(const ConlluSentence &sentence, bool is_su) {
  std::vector<std::string> words;
  std::vector<std::size_t> seps;
  for (const SurfaceToken &tok : sentence.tokens) {
    words.push_back(tok.form);
    seps.push_back(tok.space_after ? 1 : 0);
  }
  return Unit::FromWords(std::move(words), seps, is_su);
}

Corpus ConvertTreebank(const std::vector<ConlluSentence> &sentences, const RelationRuleSet &rules,
                       Split split) {
  Corpus corpus;
  corpus.split = split;
  corpus.units.reserve(sentences.size());
  for (const ConlluSentence &s : sentences) {
    corpus.units.push_back(UnitFromSentence(s, ClassifyUnit(s, rules)));
  }
  return corpus;
}

CorpusStats ComputeStats(const Corpus &corpus) {
  CorpusStats stats;
  for (const Unit &unit : corpus.units) {
    ++(unit.is_su ? stats.su_count : stats.nsu_count);
    stats.character += Count(GoldCharLabels(unit));
  }
  stats.word = Count(GoldWordLabels(corpus));
  return stats;
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const Unit &unit : corpus.units) {
    nlohmann::json offsets = nlohmann::json::array();
    for (const CharSpan &s : unit.char_offsets) offsets.push_back({s.begin, s.end});
    nlohmann::json line = {{"text", unit.text},
                           {"words", unit.words},
                           {"char_offsets", offsets},
                           {"is_su", unit.is_su}};
    out << line.dump() << '\n';
  }
}

Corpus ReadCorpus(std::istream &in, Split split) {
  Corpus corpus;
  corpus.split = split;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const nlohmann::json doc = nlohmann::json::parse(line);
      Unit unit;
      unit.text = doc.at("text").get<std::string>();
      unit.words = doc.at("words").get<std::vector<std::string>>();
      unit.is_su = doc.at("is_su").get<bool>();
      for (const auto &pair : doc.at("char_offsets")) {
        unit.char_offsets.push_back({pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>()});
      }
      unit.Validate();
      corpus.units.push_back(std::move(unit));
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("corpus record: ") + e.what(), line_no);
    } catch (const ValidationError &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return corpus;
}

}  // namespace sentid
