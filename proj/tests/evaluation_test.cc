// Copyright 2026 The TarQA Authors.
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

#include "tarqa/evaluation.h"

#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "properties.h"
#include "tarqa/error.h"
#include "testing.h"

namespace tarqa {
namespace {

using Tokens = std::vector<std::u32string>;

TEST(NormalizeAnswerTest, EnglishArticlesAndPunctuation) {
  EXPECT_EQ(NormalizeAnswer(U"The House.", "en"), (Tokens{U"house"}));
  EXPECT_EQ(NormalizeAnswer(U"  an   apple,\ta pear ", "en"),
            (Tokens{U"apple", U"pear"}));
  // Spanish articles are plain words in English.
  EXPECT_EQ(NormalizeAnswer(U"la casa", "en"), (Tokens{U"la", U"casa"}));
}

TEST(NormalizeAnswerTest, SpanishKeepsPrepositions) {
  EXPECT_EQ(NormalizeAnswer(U"22 de febrero de 1810,", "es"),
            (Tokens{U"22", U"de", U"febrero", U"de", U"1810"}));
  EXPECT_EQ(NormalizeAnswer(U"la dinastía", "es"), (Tokens{U"dinastía"}));
  EXPECT_EQ(NormalizeAnswer(U"Los Ángeles", "es"), (Tokens{U"ángeles"}));
  EXPECT_EQ(NormalizeAnswer(U"¿Unos «premios»?", "es"), (Tokens{U"premios"}));
}

TEST(NormalizeAnswerTest, PunctuationRemovalJoinsWords) {
  EXPECT_EQ(NormalizeAnswer(U"907–960", "es"), (Tokens{U"907960"}));
  EXPECT_EQ(NormalizeAnswer(U"...", "es"), Tokens{});
}

TEST(NormalizeAnswerTest, UnknownLanguageThrows) {
  EXPECT_THROW(NormalizeAnswer(U"x", "xx"), std::invalid_argument);
  EXPECT_THROW(Score(Dataset{}, {}, "xx"), std::invalid_argument);
}

TEST(NormalizeAnswerTest, CustomArticleTable) {
  ArticleTable table;
  table.Add("de", {U"der", U"die", U"das"});
  EXPECT_TRUE(table.Has("de"));
  EXPECT_FALSE(table.Has("es"));
  EXPECT_EQ(NormalizeAnswer(U"Die Katze", "de", table), (Tokens{U"katze"}));
}

TEST(ScoreTest, TrailingCommaStillExactMatch) {
  EXPECT_EQ(ExactMatchScore(U"22 de febrero de 1810,", U"22 de febrero de 1810", "es"),
            1.0);
  EXPECT_EQ(F1Score(U"22 de febrero de 1810,", U"22 de febrero de 1810", "es"), 1.0);
}

TEST(ScoreTest, PartialOverlap) {
  // Precision 3/3, recall 3/5.
  EXPECT_DOUBLE_EQ(F1Score(U"22 de febrero", U"22 de febrero de 1810", "es"), 0.75);
  EXPECT_EQ(ExactMatchScore(U"22 de febrero", U"22 de febrero de 1810", "es"), 0.0);
  EXPECT_DOUBLE_EQ(F1Score(U"de de", U"de", "es"), 2.0 * 0.5 * 1.0 / 1.5);
  EXPECT_EQ(F1Score(U"gato", U"perro", "es"), 0.0);
}

TEST(ScoreTest, EmptyAfterNormalization) {
  EXPECT_EQ(F1Score(U"la", U"el", "es"), 1.0);
  EXPECT_EQ(ExactMatchScore(U"la", U"el", "es"), 1.0);
  EXPECT_EQ(F1Score(U"la", U"perro", "es"), 0.0);
  EXPECT_EQ(F1Score(U"perro", U"", "es"), 0.0);
}

Dataset TwoQuestions() {
  return ParseDataset(R"({"data": [{"title": "t", "paragraphs": [
    {"context": "22 de febrero de 1810 en Żelazowa Wola", "qas": [
      {"id": "a", "question": "¿Cuándo?", "answers": [
        {"text": "22 de febrero de 1810", "answer_start": 0},
        {"text": "febrero", "answer_start": 6}]},
      {"id": "b", "question": "¿Dónde?", "answers": [
        {"text": "Żelazowa Wola", "answer_start": 25}]}]}]}]})");
}

TEST(ScoreTest, GoldAsPredictions) {
  const EvalReport r =
      Score(TwoQuestions(), {{"a", "22 de febrero de 1810"}, {"b", "Żelazowa Wola"}}, "es");
  EXPECT_EQ(r.exact_match, 100.0);
  EXPECT_EQ(r.f1, 100.0);
  EXPECT_EQ(r.count, 2u);
  EXPECT_TRUE(r.missing_ids.empty());
  EXPECT_EQ(FormatReport(r), R"({"exact_match":100.0,"f1":100.0})");
}

TEST(ScoreTest, MaxOverGoldAnswers) {
  const EvalReport r =
      Score(TwoQuestions(), {{"a", "22 de febrero"}, {"b", "la Żelazowa Wola."}}, "es");
  // "a": max(F1 0.75 vs first answer, F1 0.5 vs "febrero") = 0.75.
  EXPECT_DOUBLE_EQ(r.f1, 100.0 * (0.75 + 1.0) / 2.0);
  EXPECT_DOUBLE_EQ(r.exact_match, 50.0);
}

TEST(ScoreTest, MissingPredictionsCountAsZero) {
  const EvalReport r = Score(TwoQuestions(), {{"b", "Żelazowa Wola"}, {"zzz", "x"}}, "es");
  EXPECT_EQ(r.missing_ids, std::vector<std::string>{"a"});
  EXPECT_DOUBLE_EQ(r.exact_match, 50.0);
  EXPECT_DOUBLE_EQ(r.f1, 50.0);
}

TEST(ScoreTest, EmptyDataset) {
  const EvalReport r = Score(Dataset{}, {}, "es");
  EXPECT_EQ(r.count, 0u);
  EXPECT_EQ(r.f1, 0.0);
}

TEST(PredictionsTest, Parse) {
  EXPECT_EQ(ParsePredictions(R"({"a": "x", "b": ""})"),
            (Predictions{{"a", "x"}, {"b", ""}}));
  EXPECT_THROW(ParsePredictions("[1]"), Error);
  EXPECT_THROW(ParsePredictions(R"({"a": 3})"), Error);
  EXPECT_THROW(ParsePredictions("{"), Error);
}

TEST(ScorePropertyTest, ExactMatchNeverExceedsF1) {
  testing::Rng rng(41);
  const testing::PropertyReport report = testing::CheckEmNotAboveF1(rng, 2000);
  EXPECT_TRUE(report.ok()) << report.first_violation;
  EXPECT_EQ(report.cases, 2000u);
}

}  // namespace
}  // namespace tarqa
