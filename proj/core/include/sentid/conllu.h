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

#ifndef SENTID_CONLLU_H_
#define SENTID_CONLLU_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sentid {

// A surface token: what appears in the running text. Multiword tokens
// ("3-4 don't") are one surface token covering several syntactic words.
struct SurfaceToken {
  std::string form;
  bool space_after = true;
};

struct Dependency {
  // 0-based index of the governing word; nullopt for the root.
  std::optional<std::size_t> head;
  std::string relation;
};

struct ConlluSentence {
  std::vector<SurfaceToken> tokens;
  // Syntactic words and their relations, one Dependency per word.
  // Multiword ranges and empty nodes never appear here.
  std::vector<std::string> words;
  std::vector<Dependency> deprels;
  // Surface forms joined according to SpaceAfter.
  std::string raw_text;
};

// Reads CoNLL-U. Throws ParseError (with line number) on a malformed line
// and FormatError on a dangling head or a sentence without exactly one
// root.
std::vector<ConlluSentence> ParseConllu(std::istream &input);
std::vector<ConlluSentence> ParseConllu(std::string_view text);

// Relation classes that make a unit sentential. Labels are universal
// relations without subtypes.
struct RelationRuleSet {
  std::set<std::string, std::less<>> core_arguments;
  std::set<std::string, std::less<>> noncore_dependents;

  static RelationRuleSet Default();

  // {"core_arguments": [...], "noncore_dependents": [...]}; both keys are
  // required and no others are accepted.
  static RelationRuleSet FromJson(std::string_view json);
  std::string ToJson() const;
};

// Strips a subtype suffix: "nsubj:pass" -> "nsubj".
std::string_view UniversalRelation(std::string_view relation);

// True iff some relation in the sentence is a core argument or a non-core
// dependent.
bool ClassifyUnit(const ConlluSentence &sentence, const RelationRuleSet &rules);

}  // namespace sentid

#endif  // SENTID_CONLLU_H_
