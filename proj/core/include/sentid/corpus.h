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

#ifndef SENTID_CORPUS_H_
#define SENTID_CORPUS_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sentid/conllu.h"

namespace sentid {

// Half-open range of code points inside a unit's text.
struct CharSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const CharSpan &, const CharSpan &) = default;
};

struct Unit {
  std::string text;
  std::vector<std::string> words;
  bool is_su = false;
  std::vector<CharSpan> char_offsets;

  // Code points between word i and word i+1 (0 after the last word).
  std::vector<std::size_t> Separators() const;

  // Builds a unit from words and the number of separator characters
  // (spaces) following each one; the last entry is ignored.
  static Unit FromWords(std::vector<std::string> words,
                        const std::vector<std::size_t> &separators, bool is_su);

  // Throws ValidationError when the offsets do not reproduce the words.
  void Validate() const;
};

enum class Split { kTrain, kDev, kTest };

std::string_view SplitName(Split split);
Split ParseSplit(std::string_view name);

struct Corpus {
  std::vector<Unit> units;
  Split split = Split::kTrain;

  std::size_t WordCount() const;
  // Unit boundary indices over the concatenated word sequence:
  // b_0 = 0, ..., b_M = WordCount().
  std::vector<std::size_t> Boundaries() const;
};

struct LabelCounts {
  long long b = 0;
  long long i = 0;
  long long o = 0;

  LabelCounts &operator+=(const LabelCounts &other);
  friend bool operator==(const LabelCounts &, const LabelCounts &) = default;
};

struct CorpusStats {
  long long su_count = 0;
  long long nsu_count = 0;
  LabelCounts word;
  LabelCounts character;

  CorpusStats &operator+=(const CorpusStats &other);
  friend CorpusStats operator+(CorpusStats a, const CorpusStats &b) { return a += b; }
  friend bool operator==(const CorpusStats &, const CorpusStats &) = default;

  std::string ToJson() const;
};

Unit UnitFromSentence(const ConlluSentence &sentence, bool is_su);

// One unit per sentence, original order, SU status from ClassifyUnit.
Corpus ConvertTreebank(const std::vector<ConlluSentence> &sentences,
                       const RelationRuleSet &rules, Split split = Split::kTrain);

// Character counts cover unit characters only; the separators that join
// units into a running text are not counted, so stats add up across
// corpora.
CorpusStats ComputeStats(const Corpus &corpus);

// JSON Lines, one unit per line:
// {"text": str, "words": [str], "char_offsets": [[int,int]], "is_su": bool}
void WriteCorpus(const Corpus &corpus, std::ostream &out);
Corpus ReadCorpus(std::istream &in, Split split = Split::kTrain);

}  // namespace sentid

#endif  // SENTID_CORPUS_H_
