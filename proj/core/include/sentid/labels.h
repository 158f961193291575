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

#ifndef SENTID_LABELS_H_
#define SENTID_LABELS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentid/corpus.h"

namespace sentid {

enum class Label : std::uint8_t { kB, kI, kO };

enum class Granularity { kChar, kWord, kSubword };

char LabelChar(Label label);
Label LabelFromChar(char c);  // throws ParseError
std::string_view GranularityName(Granularity g);
Granularity ParseGranularity(std::string_view name);  // throws ConfigError

// Half-open token range of one SU.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Span &, const Span &) = default;
  friend auto operator<=>(const Span &, const Span &) = default;
};

struct LabelSeq {
  Granularity granularity = Granularity::kWord;
  std::vector<Label> labels;

  std::size_t size() const { return labels.size(); }

  // Every SU starts with B: an I may only follow B or I. Throws
  // ValidationError naming the first offending index.
  void Validate() const;

  std::string ToString() const;  // "BIIO..."
  static LabelSeq FromString(std::string_view bio, Granularity granularity);

  friend bool operator==(const LabelSeq &, const LabelSeq &) = default;
};

struct BoundarySeq {
  std::vector<bool> bos;
  std::vector<bool> eos;

  std::size_t size() const { return bos.size(); }
  static BoundarySeq Empty(std::size_t n) { return {std::vector<bool>(n), std::vector<bool>(n)}; }

  friend bool operator==(const BoundarySeq &, const BoundarySeq &) = default;
};

// B at each span start, I for the rest of the span, O elsewhere.
LabelSeq SpansToLabels(std::size_t n, std::span<const Span> spans, Granularity g);
// Maximal B I* runs.
std::vector<Span> LabelsToSpans(const LabelSeq &labels);

// Units joined by one separator character; separators are always O.
LabelSeq GoldCharLabels(const Corpus &corpus);
// Character labels of a single unit.
LabelSeq GoldCharLabels(const Unit &unit);
LabelSeq GoldWordLabels(const Corpus &corpus);

// Coarse token i covers characters [spans[i].begin, spans[i].end): B if any
// covered char is B, else I if any is I, else O.
LabelSeq CharsToCoarse(const LabelSeq &chars, std::span<const CharSpan> spans,
                       Granularity target = Granularity::kWord);

// B token of n chars -> B I^(n-1); I -> I^n; O -> O^n. The separators[i]
// characters after token i are I when token i+1 continues the same SU, O
// otherwise. Every length must be positive.
LabelSeq CoarseToChars(const LabelSeq &coarse, std::span<const std::size_t> lengths,
                       std::span<const std::size_t> separators);

// Character spans of tokens laid out with the given lengths and separators.
std::vector<CharSpan> TokenCharSpans(std::span<const std::size_t> lengths,
                                     std::span<const std::size_t> separators);

BoundarySeq BioToBoundaries(const LabelSeq &labels);
// Throws ValidationError when BOS and EOS do not alternate.
LabelSeq BoundariesToBio(const BoundarySeq &boundaries, Granularity g = Granularity::kWord);

// Label files: a "#granularity=<g>" header, then one line of space-separated
// labels per document.
void WriteLabelFile(std::span<const LabelSeq> docs, std::ostream &out);
std::vector<LabelSeq> ReadLabelFile(std::istream &in);

}  // namespace sentid

#endif  // SENTID_LABELS_H_
