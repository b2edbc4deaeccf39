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

#include "tarqa/pipeline.h"

#include <map>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tarqa/backends.h"
#include "tarqa/error.h"
#include "tarqa/text.h"
#include "testing.h"

namespace tarqa {
namespace {

namespace fs = std::filesystem;

PipelineConfig FixtureConfig(size_t workers = 1) {
  PipelineConfig config;
  config.translator =
      TranslatorSpec::Parse("cache:" + (testing::BilingualDir() / "trans.tsv").string());
  config.aligner =
      AlignerSpec::Parse("file:" + (testing::BilingualDir() / "align.pharaoh").string());
  config.emit_small_variant = true;
  config.worker_count = workers;
  return config;
}

Dataset FixtureSource() { return ReadDataset(testing::BilingualDir() / "source.json"); }

std::string Golden(const std::string& name) {
  return ReadTextFile(testing::BilingualDir() / "golden" / name);
}

std::string AuditLines(const std::vector<AuditRecord>& audit) {
  std::string out;
  for (const AuditRecord& r : audit) out += AuditToJson(r).dump() + "\n";
  return out;
}

// qa id -> (answer text, answer start) for every answer in `ds`.
std::map<std::string, std::vector<std::pair<std::string, int64_t>>> Answers(
    const Dataset& ds) {
  std::map<std::string, std::vector<std::pair<std::string, int64_t>>> out;
  for (const auto& a : ds.articles)
    for (const auto& p : a.paragraphs)
      for (const auto& qa : p.qas)
        for (const auto& ans : qa.answers) out[qa.id].emplace_back(ans.text, ans.answer_start);
  return out;
}

TEST(ComputeStatsTest, SingleExample) {
  const Dataset ds = ParseDataset(R"({"data": [{"title": "t", "paragraphs": [
    {"context": "Hola, mundo feliz", "qas": [{"id": "a", "question": "Qué pasa?",
     "answers": [{"text": "mundo", "answer_start": 6}]}]}]}]})");
  const DatasetStats s = ComputeStats(ds);
  EXPECT_EQ(s.translated_examples, 1u);
  EXPECT_EQ(s.total_examples, 1u);
  EXPECT_DOUBLE_EQ(s.avg_context_len, 4.0);
  EXPECT_DOUBLE_EQ(s.avg_question_len, 3.0);
  EXPECT_DOUBLE_EQ(s.avg_answer_len, 1.0);
}

TEST(ComputeStatsTest, EmptyDatasetIsZero) {
  EXPECT_EQ(ComputeStats(Dataset{}), DatasetStats{});
}

TEST(ComputeStatsTest, AveragesOverQuestionAnswerPairs) {
  const Dataset ds = ParseDataset(R"({"data": [{"title": "t", "paragraphs": [
    {"context": "uno dos tres cuatro", "qas": [{"id": "a", "question": "q",
     "answers": [{"text": "uno", "answer_start": 0},
                 {"text": "dos tres cuatro", "answer_start": 4}]}]}]}]})");
  const DatasetStats s = ComputeStats(ds);
  EXPECT_EQ(s.translated_examples, 2u);
  EXPECT_DOUBLE_EQ(s.avg_answer_len, 2.0);
  EXPECT_DOUBLE_EQ(s.avg_context_len, 4.0);
}

TEST(StatsTableTest, RowsAndJson) {
  DatasetStats full{8, 9, 97.5, 9.625, 2.625};
  DatasetStats small{4, 9, 98.25, 8.5, 2.25};
  EXPECT_EQ(FormatStatsTable({{"es", full}, {"es-small", small}}),
            "            es     es-small\n"
            "# of ex.    8/9    4/9\n"
            "Avg. c len  97.50  98.25\n"
            "Avg. q len  9.62   8.50\n"
            "Avg. a len  2.62   2.25\n");
  EXPECT_EQ(StatsFromJson(StatsToJson(full)), full);
}

TEST(SentenceTranslateContextTest, OneSentence) {
  auto translator = MakeTranslator(TranslatorSpec::Parse("cmd:tr a-z A-Z"));
  const ContextTranslation t = SentenceTranslateContext("hola mundo.", *translator);
  EXPECT_EQ(t.translation, "HOLA MUNDO.");
  EXPECT_EQ(t.offsets, (std::vector<SentenceOffsets>{{0, 0}}));
}

TEST(SentenceTranslateContextTest, SingleSpaceJoin) {
  auto identity = MakeTranslator(TranslatorSpec::Parse("identity"));
  EXPECT_EQ(SentenceTranslateContext("A. B.", *identity).translation, "A. B.");
  const ContextTranslation t =
      SentenceTranslateContext("Uno dos.   Tres,  cuatro.\n Cinco.", *identity);
  EXPECT_EQ(t.translation, "Uno dos. Tres,  cuatro. Cinco.");
  EXPECT_EQ(t.src_sentences.size(), 3u);
  // Token offsets: "Uno dos ." has 3 tokens, "Tres , cuatro ." has 4.
  EXPECT_EQ(t.offsets, (std::vector<SentenceOffsets>{{0, 0}, {3, 3}, {7, 7}}));
}

TEST(SentenceTranslateContextTest, ChopinFromCache) {
  auto translator = MakeTranslator(
      TranslatorSpec::Parse("cache:" + (testing::BilingualDir() / "trans.tsv").string()));
  const Dataset source = FixtureSource();
  const ContextTranslation t = SentenceTranslateContext(
      source.articles[0].paragraphs[0].context, *translator);
  EXPECT_EQ(t.translation,
            "Fryderyk Chopin nació en Żelazowa Wola, 46 kilómetros al oeste de "
            "Varsovia, en lo que entonces era el Ducado de Varsovia, un estado "
            "polaco establecido por Napoleón. El registro de bautismo de la "
            "parroquia da su cumpleaños el 22 de febrero de 1810, y cita sus "
            "nombres en latín Fridericus Franciscus (en polaco, Fryderyk "
            "Franciszek). Sin embargo, el compositor y su familia utilizaron la "
            "fecha de nacimiento 1 de marzo, [n 2] que ahora se acepta "
            "generalmente como la fecha correcta.");
}

TEST(AssembleContextTranslationTest, DropsEmptyTranslations) {
  const ContextTranslation t =
      AssembleContextTranslation({"A b.", "C d.", "E."}, {" x y ", "", "z"});
  EXPECT_EQ(t.translation, "x y z");
  EXPECT_EQ(t.offsets, (std::vector<SentenceOffsets>{{0, 0}, {3, 2}, {6, 2}}));
}

TEST(RunPipelineTest, IdentityReproducesInput) {
  testing::Rng rng(17);
  for (int round = 0; round < 10; ++round) {
    const Dataset ds = testing::GenerateDataset(rng, 1 + 3 * round);
    PipelineConfig config;
    config.emit_small_variant = true;
    const PipelineResult r = RunPipeline(ds, config);
    EXPECT_EQ(r.full, ds);
    ASSERT_TRUE(r.small.has_value());
    EXPECT_EQ(*r.small, ds);
    EXPECT_EQ(r.full_stats.translated_examples, r.full_stats.total_examples);
    for (const AuditRecord& rec : r.audit) {
      EXPECT_EQ(rec.method, RetrievalMethod::kDirectMatch) << rec.qa_id;
      EXPECT_TRUE(rec.tags.empty()) << rec.qa_id;
    }
  }
}

TEST(RunPipelineTest, FixtureMatchesGoldenFiles) {
  const PipelineResult r = RunPipeline(FixtureSource(), FixtureConfig());
  EXPECT_EQ(SerializeDataset(r.full), Golden("full.json"));
  ASSERT_TRUE(r.small.has_value());
  EXPECT_EQ(SerializeDataset(*r.small), Golden("small.json"));
  EXPECT_EQ(AuditLines(r.audit), Golden("audit.jsonl"));
  const Json stats = Json::parse(Golden("stats.json"));
  EXPECT_EQ(r.full_stats, StatsFromJson(stats["full"]));
  EXPECT_EQ(*r.small_stats, StatsFromJson(stats["small"]));
}

TEST(RunPipelineTest, FixtureAnswersMatchHandValues) {
  const PipelineResult r = RunPipeline(FixtureSource(), FixtureConfig());
  const auto full = Answers(r.full);
  using Entry = std::vector<std::pair<std::string, int64_t>>;
  EXPECT_EQ(full.at("chopin-1"), (Entry{{"Żelazowa Wola", 25}}));
  EXPECT_EQ(full.at("chopin-2"), (Entry{{"22 de febrero de 1810", 225}}));
  EXPECT_EQ(full.at("sino-1"), (Entry{{"907-960", 70}}));
  EXPECT_EQ(full.at("sino-2"), (Entry{{"la dinastía Liao gobernada por Kitán", 399}}));
  EXPECT_EQ(full.at("medill-2"), (Entry{{"38 premios Pulitzer", 100}}));
  EXPECT_EQ(full.count("medill-1"), 0u);
  EXPECT_EQ(full.size(), 8u);

  const auto small = Answers(*r.small);
  EXPECT_EQ(small.size(), 4u);
  for (const auto& [id, answers] : small) {
    ASSERT_EQ(full.count(id), 1u) << id;
    EXPECT_EQ(full.at(id), answers) << id;
  }

  // Hand count: contexts of 95, 89 and 114 tokens; questions and answers
  // listed in tests/fixtures/bilingual/texts.py.
  EXPECT_EQ(r.full_stats.translated_examples, 8u);
  EXPECT_EQ(r.full_stats.total_examples, 9u);
  EXPECT_DOUBLE_EQ(r.full_stats.avg_context_len, (3 * 95 + 3 * 89 + 2 * 114) / 8.0);
  EXPECT_DOUBLE_EQ(r.full_stats.avg_question_len, 77 / 8.0);
  EXPECT_DOUBLE_EQ(r.full_stats.avg_answer_len, 21 / 8.0);
  EXPECT_EQ(r.small_stats->translated_examples, 4u);
  EXPECT_DOUBLE_EQ(r.small_stats->avg_context_len, (2 * 95 + 89 + 114) / 4.0);
  EXPECT_DOUBLE_EQ(r.small_stats->avg_question_len, 34 / 4.0);
  EXPECT_DOUBLE_EQ(r.small_stats->avg_answer_len, 9 / 4.0);
}

TEST(RunPipelineTest, ForcedGapIsLoggedAsNoAlignment) {
  const PipelineResult r = RunPipeline(FixtureSource(), FixtureConfig());
  size_t dropped = 0;
  for (const AuditRecord& rec : r.audit) {
    if (!rec.dropped) continue;
    ++dropped;
    EXPECT_EQ(rec.qa_id, "medill-1");
    EXPECT_EQ(rec.dropped, DropReason::kNoAlignment);
  }
  EXPECT_EQ(dropped, 1u);
}

TEST(RunPipelineTest, WorkerCountDoesNotChangeOutput) {
  const PipelineResult one = RunPipeline(FixtureSource(), FixtureConfig(1));
  const PipelineResult four = RunPipeline(FixtureSource(), FixtureConfig(4));
  EXPECT_EQ(SerializeDataset(one.full), SerializeDataset(four.full));
  EXPECT_EQ(SerializeDataset(*one.small), SerializeDataset(*four.small));
  EXPECT_EQ(AuditLines(one.audit), AuditLines(four.audit));

  testing::Rng rng(23);
  const Dataset ds = testing::GenerateDataset(rng, 40);
  PipelineConfig a;
  a.aligner = AlignerSpec::Parse("ibm1");
  PipelineConfig b = a;
  b.worker_count = 3;
  EXPECT_EQ(SerializeDataset(RunPipeline(ds, a).full),
            SerializeDataset(RunPipeline(ds, b).full));
}

TEST(RunPipelineTest, SubstringInvariantOnOutputs) {
  testing::Rng rng(29);
  const Dataset ds = testing::GenerateDataset(rng, 30);
  PipelineConfig config;
  config.aligner = AlignerSpec::Parse("ibm1");
  config.translator = TranslatorSpec::Parse("cmd:LC_ALL=C.UTF-8 rev");
  config.emit_small_variant = true;
  const PipelineResult r = RunPipeline(ds, config);
  EXPECT_TRUE(ValidateSpans(r.full).empty());
  EXPECT_TRUE(ValidateSpans(*r.small).empty());
}

TEST(RunPipelineTest, BackendErrorsNameTheQa) {
  testing::TempDir dir;
  std::string cache = ReadTextFile(testing::BilingualDir() / "trans.tsv");
  const std::string missing = "38\ttreinta y ocho\n";
  cache.erase(cache.find(missing), missing.size());
  WriteTextFile(dir / "trans.tsv", cache);
  PipelineConfig config = FixtureConfig();
  config.translator = TranslatorSpec::Parse("cache:" + (dir / "trans.tsv").string());
  try {
    RunPipeline(FixtureSource(), config);
    FAIL() << "expected BackendError";
  } catch (const BackendError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("medill-2"), std::string::npos) << what;
    EXPECT_NE(what.find("\"38\""), std::string::npos) << what;
  }
  config.lenient = true;
  EXPECT_NO_THROW(RunPipeline(FixtureSource(), config));
}

TEST(RunPipelineTest, AlignmentFileTooShort) {
  testing::TempDir dir;
  WriteTextFile(dir / "a.pharaoh", "0-0\n");
  PipelineConfig config = FixtureConfig();
  config.aligner = AlignerSpec::Parse("file:" + (dir / "a.pharaoh").string());
  EXPECT_THROW(RunPipeline(FixtureSource(), config), BackendError);
}

TEST(RunPipelineTest, DropPolicyAndDuplicates) {
  // Two gold answers collapse to one span after cleanup; an empty input
  // paragraph survives; a paragraph whose only QA is lost disappears.
  const Dataset ds = ParseDataset(R"({"version": "1.1", "data": [
    {"title": "A", "paragraphs": [
      {"context": "Vive en Żelazowa Wola, cerca.", "qas": [{"id": "q1",
        "question": "¿Dónde?", "answers": [
          {"text": "Żelazowa Wola", "answer_start": 8},
          {"text": "Żelazowa Wola,", "answer_start": 8},
          {"text": "Żelazowa Wola", "answer_start": 8}]}]},
      {"context": "Sin preguntas.", "qas": []},
      {"context": "...", "qas": [{"id": "q2", "question": "?",
        "answers": [{"text": "...", "answer_start": 0}]}]}]},
    {"title": "B", "paragraphs": [
      {"context": "!!", "qas": [{"id": "q3", "question": "?",
        "answers": [{"text": "!!", "answer_start": 0}]}]}]}]})");
  const PipelineResult r = RunPipeline(ds, PipelineConfig{});
  ASSERT_EQ(r.full.articles.size(), 1u);
  const auto& paragraphs = r.full.articles[0].paragraphs;
  ASSERT_EQ(paragraphs.size(), 2u);
  EXPECT_EQ(paragraphs[1].context, "Sin preguntas.");
  const auto& answers = paragraphs[0].qas[0].answers;
  ASSERT_EQ(answers.size(), 2u);  // identical gold answers are kept
  EXPECT_EQ(answers[0].text, "Żelazowa Wola");
  EXPECT_EQ(answers[1].text, "Żelazowa Wola");
  size_t duplicates = 0;
  size_t empty = 0;
  for (const AuditRecord& rec : r.audit) {
    duplicates += rec.duplicate;
    empty += rec.dropped == DropReason::kEmptyAfterCleanup;
  }
  EXPECT_EQ(duplicates, 1u);
  EXPECT_EQ(empty, 2u);
  EXPECT_EQ(r.full_stats.total_examples, 5u);
}

TEST(RunPipelineTest, LenientSourceSpansAreDropped) {
  ReadOptions lenient;
  lenient.lenient = true;
  const Dataset ds = ParseDataset(R"({"data": [{"title": "t", "paragraphs": [
    {"context": "uno dos", "qas": [{"id": "a", "question": "q",
     "answers": [{"text": "dos", "answer_start": 3},
                 {"text": "dos", "answer_start": 4}]}]}]}]})", lenient);
  PipelineConfig config;
  config.lenient = true;
  const PipelineResult r = RunPipeline(ds, config);
  ASSERT_EQ(r.audit.size(), 2u);
  EXPECT_EQ(r.audit[0].dropped, DropReason::kInvalidSourceSpan);
  EXPECT_FALSE(r.audit[1].dropped.has_value());
  EXPECT_EQ(r.full.articles[0].paragraphs[0].qas[0].answers.size(), 1u);
}

TEST(AuditJsonTest, RoundTrip) {
  const PipelineResult r = RunPipeline(FixtureSource(), FixtureConfig());
  for (const AuditRecord& rec : r.audit) {
    EXPECT_EQ(AuditToJson(AuditFromJson(AuditToJson(rec))), AuditToJson(rec));
  }
}

}  // namespace
}  // namespace tarqa
