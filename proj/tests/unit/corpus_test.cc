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

#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "sentid/conllu.h"
#include "sentid/corpus.h"
#include "sentid/error.h"
#include "synthetic.h"

namespace sentid {
namespace {

std::string Row(int id, const std::string &form, int head, const std::string &rel,
                const std::string &misc = "_") {
  return std::to_string(id) + "\t" + form + "\t" + form + "\t_\t_\t_\t" + std::to_string(head) +
         "\t" + rel + "\t_\t" + misc + "\n";
}

// Four web-text sentences: a thank-you, a file-metadata line and two clauses.
std::string WebTextTreebank() {
  std::string t;
  t += Row(1, "Thank", 0, "root") + Row(2, "you", 1, "obj", "SpaceAfter=No") +
       Row(3, ".", 1, "punct") + "\n";
  t += Row(1, "-", 2, "punct") + Row(2, "TEXT.htm", 0, "root") + Row(3, "<<", 4, "punct") +
       Row(4, "File", 2, "appos", "SpaceAfter=No") + Row(5, ":", 2, "punct") +
       Row(6, "TEXT.htm", 4, "flat") + Row(7, ">>", 2, "punct") + "\n";
  t += Row(1, "I", 3, "nsubj") + Row(2, "was", 3, "aux") + Row(3, "thinking", 0, "root") +
       Row(4, "of", 5, "mark") + Row(5, "converting", 3, "advcl") + Row(6, "it", 5, "obj") +
       Row(7, "to", 9, "case") + Row(8, "a", 9, "det") + Row(9, "hover", 5, "obl") +
       Row(10, "vehicle", 9, "compound", "SpaceAfter=No") + Row(11, ".", 3, "punct") + "\n";
  t += Row(1, "I", 4, "nsubj") + Row(2, "might", 4, "aux") + Row(3, "just", 4, "advmod") +
       Row(4, "sell", 0, "root") + Row(5, "the", 6, "det") + Row(6, "car", 4, "obj") +
       Row(7, "and", 8, "cc") + Row(8, "get", 4, "conj") + Row(9, "you", 8, "obj") +
       Row(10, "to", 11, "mark") + Row(11, "drive", 8, "xcomp") + Row(12, "me", 11, "obj") +
       Row(13, "around", 11, "advmod") + Row(14, "all", 15, "det") +
       Row(15, "winter", 11, "obl:tmod", "SpaceAfter=No") + Row(16, ".", 4, "punct") + "\n";
  return t;
}

TEST(ParseConllu, SpaceAfterNoJoinsSurface) {
  const auto sents =
      ParseConllu(Row(1, "Hello", 0, "root", "SpaceAfter=No") + Row(2, "world", 1, "vocative"));
  ASSERT_EQ(sents.size(), 1u);
  EXPECT_EQ(sents[0].raw_text, "Helloworld");
  EXPECT_EQ(sents[0].deprels.size(), 2u);
  EXPECT_FALSE(sents[0].deprels[0].head.has_value());
  EXPECT_EQ(sents[0].deprels[1].head, 0u);
}

TEST(ParseConllu, MultiwordTokenKeepsSurfaceAndWords) {
  const std::string text = "# text = I don't\n" + Row(1, "I", 2, "nsubj") +
                           "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n" + Row(2, "do", 0, "root") +
                           Row(3, "n't", 2, "advmod") + "2.1\tx\tx\t_\t_\t_\t_\t_\t_\t_\n";
  const auto sents = ParseConllu(text);
  ASSERT_EQ(sents.size(), 1u);
  ASSERT_EQ(sents[0].tokens.size(), 2u);
  EXPECT_EQ(sents[0].tokens[1].form, "don't");
  EXPECT_EQ(sents[0].words, (std::vector<std::string>{"I", "do", "n't"}));
  EXPECT_EQ(sents[0].deprels.size(), 3u);
  EXPECT_EQ(sents[0].raw_text, "I don't");
}

TEST(ParseConllu, EmptyInput) { EXPECT_TRUE(ParseConllu(std::string_view()).empty()); }

TEST(ParseConllu, WrongColumnCountNamesLine) {
  const std::string text = Row(1, "a", 0, "root") + "2\tb\tb\n";
  try {
    ParseConllu(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseConllu, DanglingHeadIsRejected) {
  EXPECT_THROW(ParseConllu(Row(1, "a", 0, "root") + Row(2, "b", 7, "obj")), FormatError);
}

TEST(ParseConllu, RootCountMustBeOne) {
  EXPECT_THROW(ParseConllu(Row(1, "a", 0, "root") + Row(2, "b", 0, "root")), FormatError);
}

TEST(ClassifyUnit, WebTextSentences) {
  const auto sents = ParseConllu(WebTextTreebank());
  ASSERT_EQ(sents.size(), 4u);
  const RelationRuleSet rules = RelationRuleSet::Default();
  EXPECT_TRUE(ClassifyUnit(sents[0], rules));   // Thank you.
  EXPECT_FALSE(ClassifyUnit(sents[1], rules));  // file metadata
  EXPECT_TRUE(ClassifyUnit(sents[2], rules));
  EXPECT_TRUE(ClassifyUnit(sents[3], rules));
}

TEST(ClassifyUnit, NounPhraseIsNotSentential) {
  const auto sents =
      ParseConllu(Row(1, "the", 3, "det") + Row(2, "red", 3, "amod") + Row(3, "car", 0, "root") +
                  Row(4, "of", 5, "case") + Row(5, "Bob", 3, "nmod"));
  EXPECT_FALSE(ClassifyUnit(sents[0], RelationRuleSet::Default()));
}

TEST(ClassifyUnit, SubtypesAreStripped) {
  EXPECT_EQ(UniversalRelation("nsubj:pass"), "nsubj");
  EXPECT_EQ(UniversalRelation("obj"), "obj");
  const auto sents = ParseConllu(Row(1, "It", 3, "nsubj:pass") + Row(2, "was", 3, "aux:pass") +
                                 Row(3, "sold", 0, "root"));
  RelationRuleSet only_core;
  only_core.core_arguments = {"nsubj"};
  EXPECT_TRUE(ClassifyUnit(sents[0], only_core));
}

TEST(RelationRuleSet, JsonRoundTripAndStrictKeys) {
  const RelationRuleSet rules = RelationRuleSet::Default();
  const RelationRuleSet back = RelationRuleSet::FromJson(rules.ToJson());
  EXPECT_EQ(back.core_arguments, rules.core_arguments);
  EXPECT_EQ(back.noncore_dependents, rules.noncore_dependents);
  EXPECT_THROW(RelationRuleSet::FromJson(R"({"core_arguments": []})"), ConfigError);
  EXPECT_THROW(
      RelationRuleSet::FromJson(R"({"core_arguments": [], "noncore_dependents": [], "x": 1})"),
      ConfigError);
}

TEST(ConvertTreebank, WebTextGivesThreeSusAndOneNsu) {
  const Corpus c = ConvertTreebank(ParseConllu(WebTextTreebank()), RelationRuleSet::Default());
  ASSERT_EQ(c.units.size(), 4u);
  EXPECT_TRUE(c.units[0].is_su);
  EXPECT_FALSE(c.units[1].is_su);
  EXPECT_TRUE(c.units[2].is_su);
  EXPECT_TRUE(c.units[3].is_su);
  EXPECT_EQ(c.units[0].text, "Thank you.");
  for (const Unit &u : c.units) EXPECT_NO_THROW(u.Validate());
  const CorpusStats s = ComputeStats(c);
  EXPECT_EQ(s.su_count, 3);
  EXPECT_EQ(s.nsu_count, 1);
}

TEST(ConvertTreebank, AllSuTreebankHasNoNsus) {
  const std::string t = Row(1, "Prices", 2, "nsubj") + Row(2, "rose", 0, "root") + "\n" +
                        Row(1, "Stocks", 2, "nsubj") + Row(2, "fell", 0, "root") + "\n";
  EXPECT_EQ(ComputeStats(ConvertTreebank(ParseConllu(t), RelationRuleSet::Default())).nsu_count, 0);
}

TEST(ConvertTreebank, EmptyInputGivesEmptyCorpus) {
  EXPECT_TRUE(ConvertTreebank({}, RelationRuleSet::Default()).units.empty());
}

TEST(ConvertTreebank, UnitsUseSurfaceTokens) {
  const std::string text = Row(1, "I", 2, "nsubj") + "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n" +
                           Row(2, "do", 0, "root") + Row(3, "n't", 2, "advmod");
  const Corpus c = ConvertTreebank(ParseConllu(text), RelationRuleSet::Default());
  EXPECT_EQ(c.units[0].words, (std::vector<std::string>{"I", "don't"}));
  EXPECT_EQ(c.units[0].text, "I don't");
}

TEST(ComputeStats, SingleShortSentence) {
  Corpus c;
  c.units.push_back(Unit::FromWords({"Hi", "."}, {0, 0}, true));
  const CorpusStats s = ComputeStats(c);
  EXPECT_EQ(s.su_count, 1);
  EXPECT_EQ(s.nsu_count, 0);
  EXPECT_EQ(s.word, (LabelCounts{1, 1, 0}));
  EXPECT_EQ(s.character, (LabelCounts{1, 2, 0}));
}

TEST(ComputeStats, AdditiveOverCorpusConcatenation) {
  const Corpus a = testing::SyntheticCorpus({.units = 40, .seed = 3});
  const Corpus b = testing::SyntheticCorpus({.units = 25, .seed = 4});
  Corpus both = a;
  both.units.insert(both.units.end(), b.units.begin(), b.units.end());
  EXPECT_EQ(ComputeStats(both), ComputeStats(a) + ComputeStats(b));
  const CorpusStats s = ComputeStats(both);
  EXPECT_EQ(s.word.b, s.su_count);
  EXPECT_EQ(s.character.b, s.su_count);
}

TEST(Corpus, BoundariesSpanAllWords) {
  const Corpus c = testing::SyntheticCorpus({.units = 10, .seed = 5});
  const auto b = c.Boundaries();
  ASSERT_EQ(b.size(), c.units.size() + 1);
  EXPECT_EQ(b.front(), 0u);
  EXPECT_EQ(b.back(), c.WordCount());
  for (std::size_t k = 0; k < c.units.size(); ++k) EXPECT_EQ(b[k + 1] - b[k], c.units[k].words.size());
}

TEST(Corpus, JsonLinesRoundTrip) {
  const Corpus c = testing::SyntheticCorpus({.units = 30, .seed = 6});
  std::stringstream buf;
  WriteCorpus(c, buf);
  const Corpus back = ReadCorpus(buf);
  ASSERT_EQ(back.units.size(), c.units.size());
  for (std::size_t k = 0; k < c.units.size(); ++k) {
    EXPECT_EQ(back.units[k].text, c.units[k].text);
    EXPECT_EQ(back.units[k].words, c.units[k].words);
    EXPECT_EQ(back.units[k].is_su, c.units[k].is_su);
    EXPECT_EQ(back.units[k].char_offsets, c.units[k].char_offsets);
  }
}

TEST(Corpus, ReadRejectsInconsistentOffsets) {
  std::istringstream in(
      R"({"text":"ab cd","words":["ab","cd"],"char_offsets":[[0,2],[2,5]],"is_su":true})"
      "\n");
  EXPECT_THROW(ReadCorpus(in), Error);
}

TEST(Unit, FromWordsRecordsOffsetsInCodePoints) {
  const Unit u = Unit::FromWords({"caf\xC3\xA9", "ok"}, {2, 0}, true);
  EXPECT_EQ(u.text, "caf\xC3\xA9  ok");
  EXPECT_EQ(u.char_offsets, (std::vector<CharSpan>{{0, 4}, {6, 8}}));
  EXPECT_EQ(u.Separators(), (std::vector<std::size_t>{2, 0}));
  EXPECT_NO_THROW(u.Validate());
}

}  // namespace
}  // namespace sentid
