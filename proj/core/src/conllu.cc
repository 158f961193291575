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

#include "sentid/conllu.h"

#include <charconv>
#include <sstream>

#include "json.hpp"
#include "sentid/error.h"

namespace sentid {

namespace {

constexpr std::size_t kColumns = 10;

enum Column { kId = 0, kForm = 1, kHead = 6, kDeprel = 7, kMisc = 9 };

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

bool ParseIndex(std::string_view text, std::size_t *value) {
  if (text.empty()) return false;
  const auto *end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, *value);
  return ec == std::errc() && ptr == end;
}

bool HasSpaceAfterNo(std::string_view misc) {
  if (misc == "_") return false;
  std::size_t start = 0;
  while (start <= misc.size()) {
    std::size_t bar = misc.find('|', start);
    if (bar == std::string_view::npos) bar = misc.size();
    if (misc.substr(start, bar - start) == "SpaceAfter=No") return true;
    start = bar + 1;
  }
  return false;
}

struct PendingHead {
  std::size_t head;  // 1-based, 0 = root
  std::size_t line;
};

class SentenceBuilder {
 public:
  bool empty() const { return sentence_.words.empty() && sentence_.tokens.empty(); }

  void AddLine(std::string_view line, std::size_t line_no) {
    const auto fields = SplitTabs(line);
    if (fields.size() != kColumns) {
      throw ParseError("expected " + std::to_string(kColumns) + " tab-separated columns, found " +
                           std::to_string(fields.size()),
                       line_no);
    }
    const std::string_view id = fields[kId];
    if (id.find('.') != std::string_view::npos) return;  // empty node

    const std::size_t dash = id.find('-');
    if (dash != std::string_view::npos) {
      std::size_t first = 0, last = 0;
      if (!ParseIndex(id.substr(0, dash), &first) || !ParseIndex(id.substr(dash + 1), &last) ||
          first > last || first != sentence_.words.size() + 1) {
        throw ParseError("bad multiword token range '" + std::string(id) + "'", line_no);
      }
      sentence_.tokens.push_back({std::string(fields[kForm]), !HasSpaceAfterNo(fields[kMisc])});
      range_end_ = last;
      return;
    }

    std::size_t index = 0;
    if (!ParseIndex(id, &index) || index != sentence_.words.size() + 1) {
      throw ParseError("bad word id '" + std::string(id) + "'", line_no);
    }
    std::size_t head = 0;
    if (!ParseIndex(fields[kHead], &head)) {
      throw ParseError("bad head '" + std::string(fields[kHead]) + "'", line_no);
    }
    sentence_.words.emplace_back(fields[kForm]);
    sentence_.deprels.push_back({std::nullopt, std::string(fields[kDeprel])});
    heads_.push_back({head, line_no});
    if (index > range_end_) {
      sentence_.tokens.push_back({std::string(fields[kForm]), !HasSpaceAfterNo(fields[kMisc])});
    }
  }

  ConlluSentence Finish() {
    const std::size_t n = sentence_.words.size();
    std::size_t roots = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const PendingHead &h = heads_[k];
      if (h.head == 0) {
        ++roots;
      } else if (h.head > n) {
        throw FormatError("line " + std::to_string(h.line) + ": head " + std::to_string(h.head) +
                          " points outside a sentence of " + std::to_string(n) + " words");
      } else {
        sentence_.deprels[k].head = h.head - 1;
      }
    }
    if (n > 0 && roots != 1) {
      const std::size_t line = heads_.empty() ? 0 : heads_.front().line;
      throw FormatError("sentence starting at line " + std::to_string(line) + " has " +
                        std::to_string(roots) + " root words, expected 1");
    }
    for (std::size_t k = 0; k < sentence_.tokens.size(); ++k) {
      sentence_.raw_text += sentence_.tokens[k].form;
      if (k + 1 < sentence_.tokens.size() && sentence_.tokens[k].space_after) {
        sentence_.raw_text += ' ';
      }
    }
    ConlluSentence out = std::move(sentence_);
    sentence_ = {};
    heads_.clear();
    range_end_ = 0;
    return out;
  }

 private:
  ConlluSentence sentence_;
  std::vector<PendingHead> heads_;
  std::size_t range_end_ = 0;
};

}  // namespace

std::vector<ConlluSentence> ParseConllu(std::istream &input) {
  std::vector<ConlluSentence> sentences;
  SentenceBuilder builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!builder.empty()) sentences.push_back(builder.Finish());
      continue;
    }
    if (line.front() == '#') continue;
    builder.AddLine(line, line_no);
  }
  if (!builder.empty()) sentences.push_back(builder.Finish());
  return sentences;
}

std::vector<ConlluSentence> ParseConllu(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConllu(in);
}

RelationRuleSet RelationRuleSet::Default() {
  RelationRuleSet rules;
  rules.core_arguments = {"nsubj", "obj", "iobj", "csubj", "ccomp", "xcomp"};
  rules.noncore_dependents = {"obl", "vocative", "expl", "dislocated", "advcl",
                              "advmod", "discourse", "aux", "cop", "mark"};
  return rules;
}

RelationRuleSet RelationRuleSet::FromJson(std::string_view json) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError(std::string("rules: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("rules: expected a JSON object");
  RelationRuleSet rules;
  for (const auto &[key, value] : doc.items()) {
    std::set<std::string, std::less<>> *target = nullptr;
    if (key == "core_arguments") {
      target = &rules.core_arguments;
    } else if (key == "noncore_dependents") {
      target = &rules.noncore_dependents;
    } else {
      throw ConfigError("rules: unknown key '" + key + "'");
    }
    if (!value.is_array()) throw ConfigError("rules." + key + ": expected an array of strings");
    for (const auto &item : value) {
      if (!item.is_string()) throw ConfigError("rules." + key + ": expected an array of strings");
      target->insert(item.get<std::string>());
    }
  }
  if (!doc.contains("core_arguments") || !doc.contains("noncore_dependents")) {
    throw ConfigError("rules: both core_arguments and noncore_dependents are required");
  }
  return rules;
}

std::string RelationRuleSet::ToJson() const {
  nlohmann::json doc;
  doc["core_arguments"] = core_arguments;
  doc["noncore_dependents"] = noncore_dependents;
  return doc.dump();
}

std::string_view UniversalRelation(std::string_view relation) {
  return relation.substr(0, relation.find(':'));
}

bool ClassifyUnit(const ConlluSentence &sentence, const RelationRuleSet &rules) {
  for (const Dependency &dep : sentence.deprels) {
    const std::string_view base = UniversalRelation(dep.relation);
    if (rules.core_arguments.contains(base) || rules.noncore_dependents.contains(base)) {
      return true;
    }
  }
  return false;
}

}  // namespace sentid
