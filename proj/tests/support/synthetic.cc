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

#include "synthetic.h"

#include <array>
#include <random>
#include <sstream>
#include <string_view>
#include <vector>

#include "sentid/conllu.h"

namespace sentid::testing {

namespace {

struct Word {
  std::string form;
  std::size_t head;  // 1-based, 0 for the root
  std::string rel;
  bool space_after = true;
};

constexpr std::array<std::string_view, 12> kNouns = {
    "cat", "dog", "teacher", "river", "engine", "report",
    "garden", "window", "doctor", "market", "letter", "printer"};
constexpr std::array<std::string_view, 10> kVerbs = {
    "chased", "found", "fixed", "opened", "painted", "sold", "watched", "cleaned", "signed", "moved"};
constexpr std::array<std::string_view, 8> kIntransitive = {
    "slept", "left", "laughed", "arrived", "waited", "smiled", "failed", "stopped"};
constexpr std::array<std::string_view, 6> kAdverbs = {
    "quickly", "yesterday", "again", "early", "quietly", "today"};
constexpr std::array<std::string_view, 6> kAdjectives = {
    "red", "old", "broken", "quiet", "large", "new"};
constexpr std::array<std::string_view, 5> kNames = {"Maria", "John", "Priya", "Kenji", "Olga"};
constexpr std::array<std::string_view, 4> kPronouns = {"She", "He", "They", "We"};
constexpr std::array<std::string_view, 4> kSymbols = {"*", "=", "-", "#"};
constexpr std::array<std::string_view, 3> kEnds = {".", "!", "?"};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  template <std::size_t N>
  std::string Pick(const std::array<std::string_view, N> &items) {
    return std::string(items[Below(N)]);
  }
  std::size_t Below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool Chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

  std::vector<Word> Clause() {
    std::vector<Word> w;
    switch (Below(3)) {
      case 0:  // The N V the N .
        w = {{"The", 2, "det"}, {Pick(kNouns), 3, "nsubj"}, {Pick(kVerbs), 0, "root"},
             {"the", 5, "det"}, {Pick(kNouns), 3, "obj"}};
        break;
      case 1:  // Name V ADV .
        w = {{Pick(kNames), 2, "nsubj"}, {Pick(kIntransitive), 0, "root"},
             {Pick(kAdverbs), 2, "advmod"}};
        break;
      default:  // PRON V a ADJ N .
        w = {{Pick(kPronouns), 2, "nsubj"}, {Pick(kVerbs), 0, "root"}, {"a", 5, "det"},
             {Pick(kAdjectives), 5, "amod"}, {Pick(kNouns), 2, "obj"}};
        break;
    }
    w.back().space_after = false;
    w.push_back({Pick(kEnds), RootOf(w), "punct"});
    return w;
  }

  std::vector<Word> Fragment() {
    switch (Below(3)) {
      case 0: {  // 10:32 AM
        const std::string time =
            std::to_string(1 + Below(12)) + ":" + std::to_string(10 + Below(50));
        std::vector<Word> w = {{time, 0, "root"}};
        if (Chance(0.5)) w.push_back({Chance(0.5) ? "AM" : "PM", 1, "flat"});
        return w;
      }
      case 1: {  // * * *
        const std::string sym = Pick(kSymbols);
        std::vector<Word> w = {{sym, 0, "root"}};
        const std::size_t n = 2 + Below(3);
        for (std::size_t k = 1; k < n; ++k) w.push_back({sym, 1, "punct"});
        return w;
      }
      default: {  // the old letter
        std::vector<Word> w = {{"the", 3, "det"}, {Pick(kAdjectives), 3, "amod"},
                               {Pick(kNouns), 0, "root"}};
        if (Chance(0.5)) w.erase(w.begin());
        if (w.size() == 2) w[0].head = 2, w[1].head = 0;
        return w;
      }
    }
  }

 private:
  static std::size_t RootOf(const std::vector<Word> &w) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k].head == 0) return k + 1;
    }
    return 1;
  }

  std::mt19937_64 rng_;
};

}  // namespace

std::string SyntheticConllu(const SyntheticOptions &opts) {
  Generator gen(opts.seed);
  std::ostringstream out;
  for (std::size_t s = 0; s < opts.units; ++s) {
    const std::vector<Word> words = gen.Chance(opts.nsu_rate) ? gen.Fragment() : gen.Clause();
    out << "# sent_id = syn-" << s << '\n';
    for (std::size_t k = 0; k < words.size(); ++k) {
      const Word &w = words[k];
      out << k + 1 << '\t' << w.form << '\t' << w.form << "\t_\t_\t_\t" << w.head << '\t'
          << w.rel << "\t_\t" << (w.space_after ? "_" : "SpaceAfter=No") << '\n';
    }
    out << '\n';
  }
  return out.str();
}

Corpus SyntheticCorpus(const SyntheticOptions &opts, Split split) {
  return ConvertTreebank(ParseConllu(SyntheticConllu(opts)), RelationRuleSet::Default(), split);
}

}  // namespace sentid::testing
