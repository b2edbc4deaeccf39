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

// Dataset translation: translate every context (sentence by sentence),
// question and answer, align context sentences with their translations, and
// re-anchor every answer in the translated context.
//
// Backend calls are batched over the whole dataset: one translator call for
// all lines and one aligner call for all sentence pairs, in dataset order
// (article, paragraph, sentence). Per-paragraph work (segmentation,
// alignment merging, retrieval, cleanup) runs on `worker_count` threads;
// results are assembled in input order, so the output does not depend on
// the number of workers.

#ifndef TARQA_PIPELINE_H_
#define TARQA_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tarqa/backends.h"
#include "tarqa/context_alignment.h"
#include "tarqa/retrieval.h"
#include "tarqa/segmentation.h"
#include "tarqa/squad.h"

namespace tarqa {

struct PipelineConfig {
  TranslatorSpec translator;
  AlignerSpec aligner;
  bool emit_small_variant = false;
  bool lenient = false;
  size_t worker_count = 1;
  // nullptr selects Abbreviations::Default().
  const Abbreviations* abbreviations = nullptr;
};

struct DatasetStats {
  // (question, answer) pairs in the output and in the source dataset.
  size_t translated_examples = 0;
  size_t total_examples = 0;
  // Mean token counts per (question, answer) example.
  double avg_context_len = 0.0;
  double avg_question_len = 0.0;
  double avg_answer_len = 0.0;

  bool operator==(const DatasetStats&) const = default;
};

// translated_examples == total_examples == number of (question, answer)
// pairs in `dataset`.
DatasetStats ComputeStats(const Dataset& dataset);

Json StatsToJson(const DatasetStats& stats);
DatasetStats StatsFromJson(const Json& json);

// Rows "# of ex.", "Avg. c len", "Avg. q len", "Avg. a len", one column per
// named dataset.
std::string FormatStatsTable(
    const std::vector<std::pair<std::string, DatasetStats>>& columns);

// One line per answer of the source dataset.
struct AuditRecord {
  size_t article_index = 0;
  size_t paragraph_index = 0;
  std::string qa_id;
  size_t answer_index = 0;
  std::string source_text;
  int64_t source_start = 0;
  std::string literal;
  std::optional<RetrievalMethod> method;
  std::vector<RiskTag> tags;
  std::string pre_cleanup_text;
  size_t pre_cleanup_start = 0;
  std::string text;
  size_t answer_start = 0;
  std::optional<DropReason> dropped;
  // Duplicate of an earlier answer of the same question after cleanup.
  bool duplicate = false;
  // The paragraph had sentences without a sentence alignment.
  bool paragraph_alignment_mismatch = false;
};

Json AuditToJson(const AuditRecord& record);
AuditRecord AuditFromJson(const Json& json);

struct PipelineResult {
  Dataset full;
  std::optional<Dataset> small;
  std::vector<AuditRecord> audit;
  DatasetStats full_stats;
  std::optional<DatasetStats> small_stats;
};

// Translation of one context, split into sentences.
struct ContextTranslation {
  std::string translation;  // sentence translations joined by one space
  std::vector<std::string> src_sentences;
  std::vector<std::string> tgt_sentences;
  // Token offsets of every sentence pair within the two contexts.
  std::vector<SentenceOffsets> offsets;
};

// Builds the translated context from already translated sentences.
ContextTranslation AssembleContextTranslation(
    std::vector<std::string> src_sentences,
    std::vector<std::string> tgt_sentences);

// Splits `context` into sentences and translates them in one batch.
ContextTranslation SentenceTranslateContext(
    std::string_view context, Translator& translator,
    const Abbreviations& abbreviations = Abbreviations::Default());

// Throws BackendError (with article/paragraph/QA context in the message) on
// backend failure.
PipelineResult RunPipeline(const Dataset& dataset, const PipelineConfig& config);

// Same, with caller-owned backends.
PipelineResult RunPipeline(const Dataset& dataset, const PipelineConfig& config,
                           Translator& translator, Aligner& aligner);

}  // namespace tarqa

#endif  // TARQA_PIPELINE_H_
