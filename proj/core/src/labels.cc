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

#include "sentid/labels.h"

#include <algorithm>
#include <sstream>

#include "sentid/error.h"
#include "sentid/utf8.h"

namespace sentid {

char LabelChar(Label label) {
  switch (label) {
    case Label::kB:
      return 'B';
    case Label::kI:
      return 'I';
    case Label::kO:
      return 'O';
  }
  return '?';
}

Label LabelFromChar(char c) {
  switch (c) {
    case 'B':
      return Label::kB;
    case 'I':
      return Label::kI;
    case 'O':
      return Label::kO;
    default:
      throw ParseError(std::string("unknown label '") + c + "'");
  }
}

std::string_view GranularityName(Granularity g) {
  switch (g) {
    case Granularity::kChar:
      return "char";
    case Granularity::kWord:
      return "word";
    case Granularity::kSubword:
      return "subword";
  }
  return "?";
}

Granularity ParseGranularity(std::string_view name) {
  if (name == "char") return Granularity::kChar;
  if (name == "word") return Granularity::kWord;
  if (name == "subword") return Granularity::kSubword;
  throw ConfigError("unknown granularity '" + std::string(name) + "'");
}

void LabelSeq::Validate() const {
  Label prev = Label::kO;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if (labels[k] == Label::kI && prev == Label::kO) {
      throw ValidationError("I label at index " + std::to_string(k) +
                            " does not continue an SU");
    }
    prev = labels[k];
  }
}

std::string LabelSeq::ToString() const {
  std::string out;
  out.reserve(labels.size());
  for (Label l : labels) out += LabelChar(l);
  return out;
}

LabelSeq LabelSeq::FromString(std::string_view bio, Granularity granularity) {
  LabelSeq seq{granularity, {}};
  seq.labels.reserve(bio.size());
  for (char c : bio) seq.labels.push_back(LabelFromChar(c));
  return seq;
}

LabelSeq SpansToLabels(std::size_t n, std::span<const Span> spans, Granularity g) {
  LabelSeq seq{g, std::vector<Label>(n, Label::kO)};
  for (const Span &s : spans) {
    if (s.begin >= s.end || s.end > n) {
      throw ValidationError("span [" + std::to_string(s.begin) + "," + std::to_string(s.end) +
                            ") is empty or exceeds length " + std::to_string(n));
    }
    seq.labels[s.begin] = Label::kB;
    std::fill(seq.labels.begin() + static_cast<std::ptrdiff_t>(s.begin) + 1,
              seq.labels.begin() + static_cast<std::ptrdiff_t>(s.end), Label::kI);
  }
  return seq;
}

std::vector<Span> LabelsToSpans(const LabelSeq &labels) {
  std::vector<Span> spans;
  const auto &l = labels.labels;
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (l[k] != Label::kB) continue;
    std::size_t end = k + 1;
    while (end < l.size() && l[end] == Label::kI) ++end;
    spans.push_back({k, end});
  }
  return spans;
}

LabelSeq GoldCharLabels(const Unit &unit) {
  const std::size_t n = utf8::Length(unit.text);
  LabelSeq seq{Granularity::kChar, std::vector<Label>(n, unit.is_su ? Label::kI : Label::kO)};
  if (unit.is_su && n > 0) seq.labels[0] = Label::kB;
  return seq;
}

LabelSeq GoldCharLabels(const Corpus &corpus) {
  LabelSeq seq{Granularity::kChar, {}};
  for (std::size_t u = 0; u < corpus.units.size(); ++u) {
    if (u > 0) seq.labels.push_back(Label::kO);
    const LabelSeq unit = GoldCharLabels(corpus.units[u]);
    seq.labels.insert(seq.labels.end(), unit.labels.begin(), unit.labels.end());
  }
  return seq;
}

LabelSeq GoldWordLabels(const Corpus &corpus) {
  LabelSeq seq{Granularity::kWord, {}};
  for (const Unit &unit : corpus.units) {
    for (std::size_t k = 0; k < unit.words.size(); ++k) {
      seq.labels.push_back(!unit.is_su ? Label::kO : (k == 0 ? Label::kB : Label::kI));
    }
  }
  return seq;
}

LabelSeq CharsToCoarse(const LabelSeq &chars, std::span<const CharSpan> spans,
                       Granularity target) {
  LabelSeq out{target, {}};
  out.labels.reserve(spans.size());
  for (std::size_t t = 0; t < spans.size(); ++t) {
    const CharSpan &s = spans[t];
    if (s.begin > s.end || s.end > chars.size()) {
      throw ValidationError("token " + std::to_string(t) + " covers characters [" +
                            std::to_string(s.begin) + "," + std::to_string(s.end) +
                            ") outside a sequence of " + std::to_string(chars.size()));
    }
    bool has_b = false, has_i = false;
    for (std::size_t c = s.begin; c < s.end; ++c) {
      has_b |= chars.labels[c] == Label::kB;
      has_i |= chars.labels[c] == Label::kI;
    }
    out.labels.push_back(has_b ? Label::kB : (has_i ? Label::kI : Label::kO));
  }
  return out;
}

LabelSeq CoarseToChars(const LabelSeq &coarse, std::span<const std::size_t> lengths,
                       std::span<const std::size_t> separators) {
  const std::size_t n = coarse.size();
  if (lengths.size() != n || separators.size() != n) {
    throw ValidationError("label/length/separator counts differ: " + std::to_string(n) + "/" +
                          std::to_string(lengths.size()) + "/" +
                          std::to_string(separators.size()));
  }
  LabelSeq out{Granularity::kChar, {}};
  for (std::size_t t = 0; t < n; ++t) {
    if (lengths[t] == 0) {
      throw ValidationError("token " + std::to_string(t) + " has zero length");
    }
    const Label l = coarse.labels[t];
    out.labels.push_back(l == Label::kO ? Label::kO : l);
    out.labels.insert(out.labels.end(), lengths[t] - 1, l == Label::kO ? Label::kO : Label::kI);
    const bool inside = l != Label::kO && t + 1 < n && coarse.labels[t + 1] == Label::kI;
    out.labels.insert(out.labels.end(), separators[t], inside ? Label::kI : Label::kO);
  }
  return out;
}

std::vector<CharSpan> TokenCharSpans(std::span<const std::size_t> lengths,
                                     std::span<const std::size_t> separators) {
  std::vector<CharSpan> spans;
  spans.reserve(lengths.size());
  std::size_t pos = 0;
  for (std::size_t t = 0; t < lengths.size(); ++t) {
    spans.push_back({pos, pos + lengths[t]});
    pos += lengths[t] + (t < separators.size() ? separators[t] : 0);
  }
  return spans;
}

BoundarySeq BioToBoundaries(const LabelSeq &labels) {
  labels.Validate();
  const std::size_t n = labels.size();
  BoundarySeq b = BoundarySeq::Empty(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Label l = labels.labels[k];
    if (l == Label::kB) b.bos[k] = true;
    const bool next_continues = k + 1 < n && labels.labels[k + 1] == Label::kI;
    if (l != Label::kO && !next_continues) b.eos[k] = true;
  }
  return b;
}

LabelSeq BoundariesToBio(const BoundarySeq &boundaries, Granularity g) {
  const std::size_t n = boundaries.size();
  if (boundaries.eos.size() != n) {
    throw ValidationError("BOS and EOS sequences differ in length");
  }
  LabelSeq out{g, std::vector<Label>(n, Label::kO)};
  bool inside = false;
  for (std::size_t k = 0; k < n; ++k) {
    if (boundaries.bos[k]) {
      if (inside) {
        throw ValidationError("BOS at index " + std::to_string(k) + " before the previous SU ended");
      }
      inside = true;
      out.labels[k] = Label::kB;
    } else if (inside) {
      out.labels[k] = Label::kI;
    }
    if (boundaries.eos[k]) {
      if (!inside) {
        throw ValidationError("EOS at index " + std::to_string(k) + " without an open SU");
      }
      inside = false;
    }
  }
  if (inside) throw ValidationError("SU opened but never closed by an EOS");
  return out;
}

void WriteLabelFile(std::span<const LabelSeq> docs, std::ostream &out) {
  const Granularity g = docs.empty() ? Granularity::kWord : docs.front().granularity;
  out << "#granularity=" << GranularityName(g) << '\n';
  for (const LabelSeq &doc : docs) {
    if (doc.granularity != g) throw ValidationError("label file mixes granularities");
    for (std::size_t k = 0; k < doc.size(); ++k) {
      if (k > 0) out << ' ';
      out << LabelChar(doc.labels[k]);
    }
    out << '\n';
  }
}

std::vector<LabelSeq> ReadLabelFile(std::istream &in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing #granularity header", 1);
  constexpr std::string_view kHeader = "#granularity=";
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (!std::string_view(line).starts_with(kHeader)) {
    throw ParseError("missing #granularity header", 1);
  }
  const Granularity g = ParseGranularity(std::string_view(line).substr(kHeader.size()));
  std::vector<LabelSeq> docs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    LabelSeq doc{g, {}};
    std::istringstream fields(line);
    std::string tok;
    while (fields >> tok) {
      if (tok.size() != 1) throw ParseError("bad label '" + tok + "'", line_no);
      try {
        doc.labels.push_back(LabelFromChar(tok[0]));
      } catch (const ParseError &) {
        throw ParseError("bad label '" + tok + "'", line_no);
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace sentid
