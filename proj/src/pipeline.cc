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

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>
#include <utility>

#include "tarqa/error.h"
#include "tarqa/text.h"

namespace tarqa {
namespace {

// Translator lines must be single lines; CR/LF become spaces, which keeps
// every scalar-value offset intact.
std::string AsSingleLine(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  std::replace(text.begin(), text.end(), '\r', ' ');
  return text;
}

std::vector<std::string> TokenStrings(std::u32string_view text) {
  std::vector<std::string> out;
  for (const Token& token : Tokenize(text)) out.push_back(EncodeUtf8(token.text));
  return out;
}

// Where a translator line or aligner pair came from.
struct Origin {
  size_t article = 0;
  size_t paragraph = 0;
  std::string what;  // "sentence 2", "question q1", ...
};

std::string Describe(const Dataset& ds, const Origin& origin) {
  return "article " + std::to_string(origin.article) + " \"" +
         ds.articles[origin.article].title + "\", paragraph " +
         std::to_string(origin.paragraph) + ", " + origin.what;
}

struct ParagraphJob {
  size_t article = 0;
  size_t paragraph = 0;
  std::u32string context;
  std::vector<std::string> src_sentences;
  size_t sentence_line = 0;
  // Per QA: line of the question, then lines of its answers.
  std::vector<size_t> question_line;
  std::vector<std::vector<size_t>> answer_line;
  // Filled after translation.
  ContextTranslation translation;
  size_t first_pair = 0;
};

struct ParagraphOutput {
  std::optional<Paragraph> full;
  std::optional<Paragraph> small;
  std::vector<AuditRecord> audit;
};

ParagraphOutput ProcessParagraph(const Paragraph& source,
                                 const ParagraphJob& job,
                                 const std::vector<std::string>& translations,
                                 const std::vector<TokenAlignment>& alignments,
                                 const Abbreviations& abbreviations) {
  const SegmentedContext src = BuildSegmentedContext(job.context, abbreviations);
  const SegmentedContext tgt = BuildSegmentedContext(
      DecodeUtf8(job.translation.translation), abbreviations);

  const std::span<const TokenAlignment> sentence_alignments(
      alignments.data() + job.first_pair, job.translation.offsets.size());
  const ContextAlignment alignment = MergeSentenceAlignments(
      src, tgt, sentence_alignments, job.translation.offsets);
  const bool mismatch = alignment.unaligned_sentences > 0;

  ParagraphOutput out;
  Paragraph full{job.translation.translation, {}, source.extra};
  Paragraph small{job.translation.translation, {}, source.extra};

  for (size_t k = 0; k < source.qas.size(); ++k) {
    const QA& qa = source.qas[k];
    QA full_qa{qa.id, translations[job.question_line[k]], {}, qa.extra};
    QA small_qa = full_qa;
    std::set<std::pair<std::u32string, size_t>> seen_sources;
    std::set<std::pair<std::u32string, size_t>> kept;

    for (size_t m = 0; m < qa.answers.size(); ++m) {
      const Answer& answer = qa.answers[m];
      const std::u32string source_text = DecodeUtf8(answer.text);
      const std::string& literal = translations[job.answer_line[k][m]];

      AuditRecord record;
      record.article_index = job.article;
      record.paragraph_index = job.paragraph;
      record.qa_id = qa.id;
      record.answer_index = m;
      record.source_text = answer.text;
      record.source_start = answer.answer_start;
      record.literal = literal;
      record.paragraph_alignment_mismatch = mismatch;

      if (answer.span_invalid) {
        record.dropped = DropReason::kInvalidSourceSpan;
        out.audit.push_back(std::move(record));
        continue;
      }

      const RetrievedAnswer retrieved = RetrieveAnswer(
          src, tgt, alignment, static_cast<size_t>(answer.answer_start),
          source_text, DecodeUtf8(literal));
      if (retrieved.is_dropped()) {
        record.dropped = retrieved.dropped;
        out.audit.push_back(std::move(record));
        continue;
      }
      record.method = retrieved.method;
      record.pre_cleanup_text = EncodeUtf8(retrieved.text);
      record.pre_cleanup_start = retrieved.answer_start;
      record.tags = ClassifyErrorRisk(retrieved, retrieved.text);

      const RetrievedAnswer cleaned = CleanupAnswer(retrieved, tgt);
      record.dropped = cleaned.dropped;
      if (!cleaned.is_dropped()) {
        record.text = EncodeUtf8(cleaned.text);
        record.answer_start = cleaned.answer_start;
        // Identical gold answers are kept; answers that only collapse after
        // retrieval are merged.
        const bool repeated_source =
            !seen_sources.emplace(source_text, answer.answer_start).second;
        const bool collapsed =
            !kept.emplace(cleaned.text, cleaned.answer_start).second;
        if (collapsed && !repeated_source) {
          record.duplicate = true;
        } else {
          Answer translated{record.text,
                            static_cast<int64_t>(cleaned.answer_start),
                            answer.extra};
          full_qa.answers.push_back(translated);
          if (cleaned.method == RetrievalMethod::kDirectMatch) {
            small_qa.answers.push_back(std::move(translated));
          }
        }
      } else {
        seen_sources.emplace(source_text, answer.answer_start);
      }
      out.audit.push_back(std::move(record));
    }
    if (!full_qa.answers.empty()) full.qas.push_back(std::move(full_qa));
    if (!small_qa.answers.empty()) small.qas.push_back(std::move(small_qa));
  }

  // Paragraphs that lost every question are dropped; paragraphs that never
  // had one are kept.
  if (!full.qas.empty() || source.qas.empty()) out.full = std::move(full);
  if (!small.qas.empty() || source.qas.empty()) out.small = std::move(small);
  return out;
}

std::string FormatCount(const DatasetStats& s) {
  return std::to_string(s.translated_examples) + "/" +
         std::to_string(s.total_examples);
}

std::string FormatAverage(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", value);
  return buffer;
}

std::optional<std::string> OptionalString(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

DatasetStats ComputeStats(const Dataset& dataset) {
  DatasetStats stats;
  double context_sum = 0.0;
  double question_sum = 0.0;
  double answer_sum = 0.0;
  for (const Article& article : dataset.articles) {
    for (const Paragraph& paragraph : article.paragraphs) {
      const double context_len =
          static_cast<double>(Tokenize(DecodeUtf8(paragraph.context)).size());
      for (const QA& qa : paragraph.qas) {
        const double question_len =
            static_cast<double>(Tokenize(DecodeUtf8(qa.question)).size());
        for (const Answer& answer : qa.answers) {
          ++stats.translated_examples;
          context_sum += context_len;
          question_sum += question_len;
          answer_sum +=
              static_cast<double>(Tokenize(DecodeUtf8(answer.text)).size());
        }
      }
    }
  }
  stats.total_examples = stats.translated_examples;
  if (stats.translated_examples > 0) {
    const double n = static_cast<double>(stats.translated_examples);
    stats.avg_context_len = context_sum / n;
    stats.avg_question_len = question_sum / n;
    stats.avg_answer_len = answer_sum / n;
  }
  return stats;
}

Json StatsToJson(const DatasetStats& stats) {
  Json j = Json::object();
  j["translated_examples"] = stats.translated_examples;
  j["total_examples"] = stats.total_examples;
  j["avg_context_len"] = stats.avg_context_len;
  j["avg_question_len"] = stats.avg_question_len;
  j["avg_answer_len"] = stats.avg_answer_len;
  return j;
}

DatasetStats StatsFromJson(const Json& j) {
  DatasetStats stats;
  stats.translated_examples = j.at("translated_examples").get<size_t>();
  stats.total_examples = j.at("total_examples").get<size_t>();
  stats.avg_context_len = j.at("avg_context_len").get<double>();
  stats.avg_question_len = j.at("avg_question_len").get<double>();
  stats.avg_answer_len = j.at("avg_answer_len").get<double>();
  return stats;
}

std::string FormatStatsTable(
    const std::vector<std::pair<std::string, DatasetStats>>& columns) {
  std::vector<std::vector<std::string>> rows = {
      {""}, {"# of ex."}, {"Avg. c len"}, {"Avg. q len"}, {"Avg. a len"}};
  for (const auto& [name, stats] : columns) {
    rows[0].push_back(name);
    rows[1].push_back(FormatCount(stats));
    rows[2].push_back(FormatAverage(stats.avg_context_len));
    rows[3].push_back(FormatAverage(stats.avg_question_len));
    rows[4].push_back(FormatAverage(stats.avg_answer_len));
  }
  std::vector<size_t> widths(rows[0].size(), 0);
  for (const auto& row : rows)
    for (size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], CodePointLength(row[c]));

  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += row[c];
      line.append(widths[c] - CodePointLength(row[c]), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  return out.str();
}

Json AuditToJson(const AuditRecord& r) {
  Json j = Json::object();
  j["id"] = r.qa_id;
  j["article"] = r.article_index;
  j["paragraph"] = r.paragraph_index;
  j["answer"] = r.answer_index;
  j["source"] = {{"text", r.source_text}, {"answer_start", r.source_start}};
  j["literal"] = r.literal;
  j["method"] = r.method ? Json(std::string(ToString(*r.method))) : Json();
  Json tags = Json::array();
  for (RiskTag tag : r.tags) tags.push_back(std::string(ToString(tag)));
  j["tags"] = std::move(tags);
  if (r.method) {
    j["pre_cleanup"] = {{"text", r.pre_cleanup_text},
                        {"answer_start", r.pre_cleanup_start}};
  } else {
    j["pre_cleanup"] = Json();
  }
  if (r.method && !r.dropped) {
    j["post_cleanup"] = {{"text", r.text}, {"answer_start", r.answer_start}};
  } else {
    j["post_cleanup"] = Json();
  }
  j["dropped"] = r.dropped ? Json(std::string(ToString(*r.dropped))) : Json();
  j["duplicate"] = r.duplicate;
  j["alignment_mismatch"] = r.paragraph_alignment_mismatch;
  return j;
}

AuditRecord AuditFromJson(const Json& j) {
  AuditRecord r;
  r.qa_id = j.at("id").get<std::string>();
  r.article_index = j.at("article").get<size_t>();
  r.paragraph_index = j.at("paragraph").get<size_t>();
  r.answer_index = j.at("answer").get<size_t>();
  r.source_text = j.at("source").at("text").get<std::string>();
  r.source_start = j.at("source").at("answer_start").get<int64_t>();
  r.literal = j.at("literal").get<std::string>();
  if (auto method = OptionalString(j, "method")) {
    r.method = *method == "DirectMatch" ? RetrievalMethod::kDirectMatch
                                        : RetrievalMethod::kAlignmentSpan;
  }
  for (const Json& tag : j.at("tags")) {
    const std::string name = tag.get<std::string>();
    for (RiskTag t : {RiskTag::kCrossedSentence, RiskTag::kEdgePunctuation,
                      RiskTag::kAlignmentFallback,
                      RiskTag::kLowercaseMatchCaseChanged}) {
      if (ToString(t) == name) r.tags.push_back(t);
    }
  }
  if (const Json& pre = j.at("pre_cleanup"); !pre.is_null()) {
    r.pre_cleanup_text = pre.at("text").get<std::string>();
    r.pre_cleanup_start = pre.at("answer_start").get<size_t>();
  }
  if (const Json& post = j.at("post_cleanup"); !post.is_null()) {
    r.text = post.at("text").get<std::string>();
    r.answer_start = post.at("answer_start").get<size_t>();
  }
  if (auto dropped = OptionalString(j, "dropped")) {
    for (DropReason d : {DropReason::kNoAlignment, DropReason::kEmptyAfterCleanup,
                         DropReason::kInvalidSourceSpan}) {
      if (ToString(d) == *dropped) r.dropped = d;
    }
  }
  r.duplicate = j.value("duplicate", false);
  r.paragraph_alignment_mismatch = j.value("alignment_mismatch", false);
  return r;
}

ContextTranslation AssembleContextTranslation(
    std::vector<std::string> src_sentences,
    std::vector<std::string> tgt_sentences) {
  ContextTranslation out;
  size_t src_tokens = 0;
  size_t tgt_tokens = 0;
  for (size_t k = 0; k < src_sentences.size(); ++k) {
    out.offsets.push_back({src_tokens, tgt_tokens});
    src_tokens += Tokenize(DecodeUtf8(src_sentences[k])).size();
    if (k < tgt_sentences.size()) {
      const std::u32string decoded = DecodeUtf8(tgt_sentences[k]);
      const std::u32string_view trimmed = TrimWhitespace(decoded);
      tgt_tokens += Tokenize(trimmed).size();
      tgt_sentences[k] = EncodeUtf8(trimmed);
      if (!trimmed.empty()) {
        if (!out.translation.empty()) out.translation += ' ';
        out.translation += tgt_sentences[k];
      }
    }
  }
  out.src_sentences = std::move(src_sentences);
  out.tgt_sentences = std::move(tgt_sentences);
  return out;
}

ContextTranslation SentenceTranslateContext(std::string_view context,
                                            Translator& translator,
                                            const Abbreviations& abbreviations) {
  const std::u32string text = DecodeUtf8(context);
  std::vector<std::string> sentences;
  for (const Span& s : SplitSentences(text, abbreviations)) {
    sentences.push_back(AsSingleLine(
        EncodeUtf8(std::u32string_view(text).substr(s.start, s.size()))));
  }
  std::vector<std::string> translated = translator.TranslateBatch(sentences);
  if (translated.size() != sentences.size()) {
    throw BackendError("translator returned " +
                       std::to_string(translated.size()) + " lines for " +
                       std::to_string(sentences.size()) + " sentences");
  }
  return AssembleContextTranslation(std::move(sentences),
                                    std::move(translated));
}

PipelineResult RunPipeline(const Dataset& dataset,
                           const PipelineConfig& config) {
  TranslatorSpec translator_spec = config.translator;
  translator_spec.lenient = translator_spec.lenient || config.lenient;
  std::unique_ptr<Translator> translator = MakeTranslator(translator_spec);
  std::unique_ptr<Aligner> aligner = MakeAligner(config.aligner);
  return RunPipeline(dataset, config, *translator, *aligner);
}

PipelineResult RunPipeline(const Dataset& dataset, const PipelineConfig& config,
                           Translator& translator, Aligner& aligner) {
  const Abbreviations& abbreviations =
      config.abbreviations ? *config.abbreviations : Abbreviations::Default();

  // 1. Collect every line to translate, in dataset order.
  std::vector<ParagraphJob> jobs;
  std::vector<std::string> lines;
  std::vector<Origin> line_origin;
  for (size_t a = 0; a < dataset.articles.size(); ++a) {
    const Article& article = dataset.articles[a];
    for (size_t p = 0; p < article.paragraphs.size(); ++p) {
      const Paragraph& paragraph = article.paragraphs[p];
      ParagraphJob job;
      job.article = a;
      job.paragraph = p;
      job.context = DecodeUtf8(paragraph.context);
      job.sentence_line = lines.size();
      const std::vector<Span> sentences =
          SplitSentences(job.context, abbreviations);
      for (size_t s = 0; s < sentences.size(); ++s) {
        job.src_sentences.push_back(AsSingleLine(EncodeUtf8(
            std::u32string_view(job.context)
                .substr(sentences[s].start, sentences[s].size()))));
        lines.push_back(job.src_sentences.back());
        line_origin.push_back({a, p, "context sentence " + std::to_string(s)});
      }
      for (const QA& qa : paragraph.qas) {
        job.question_line.push_back(lines.size());
        lines.push_back(AsSingleLine(qa.question));
        line_origin.push_back({a, p, "question of QA " + qa.id});
        std::vector<size_t> answer_lines;
        for (size_t m = 0; m < qa.answers.size(); ++m) {
          answer_lines.push_back(lines.size());
          lines.push_back(AsSingleLine(qa.answers[m].text));
          line_origin.push_back(
              {a, p, "answer " + std::to_string(m) + " of QA " + qa.id});
        }
        job.answer_line.push_back(std::move(answer_lines));
      }
      jobs.push_back(std::move(job));
    }
  }

  // 2. Translate.
  std::vector<std::string> translations;
  try {
    translations = translator.TranslateBatch(lines);
  } catch (const BackendError& e) {
    if (e.line() && *e.line() < line_origin.size()) {
      throw BackendError(std::string(e.what()) + " [" +
                             Describe(dataset, line_origin[*e.line()]) + "]",
                         e.line());
    }
    throw;
  }
  if (translations.size() != lines.size()) {
    throw BackendError("translator returned " +
                       std::to_string(translations.size()) + " lines for " +
                       std::to_string(lines.size()) + " inputs");
  }
  for (std::string& t : translations) t = AsSingleLine(std::move(t));

  // 3. Align every sentence pair.
  std::vector<SentencePair> pairs;
  std::vector<Origin> pair_origin;
  for (ParagraphJob& job : jobs) {
    std::vector<std::string> tgt(
        translations.begin() + static_cast<ptrdiff_t>(job.sentence_line),
        translations.begin() +
            static_cast<ptrdiff_t>(job.sentence_line + job.src_sentences.size()));
    job.translation = AssembleContextTranslation(job.src_sentences, std::move(tgt));
    job.first_pair = pairs.size();
    for (size_t s = 0; s < job.translation.src_sentences.size(); ++s) {
      pairs.push_back({TokenStrings(DecodeUtf8(job.translation.src_sentences[s])),
                       TokenStrings(DecodeUtf8(job.translation.tgt_sentences[s]))});
      pair_origin.push_back(
          {job.article, job.paragraph, "context sentence " + std::to_string(s)});
    }
  }
  std::vector<TokenAlignment> alignments;
  try {
    alignments = aligner.AlignBatch(pairs);
  } catch (const BackendError& e) {
    if (e.line() && *e.line() < pair_origin.size()) {
      throw BackendError(std::string(e.what()) + " [" +
                             Describe(dataset, pair_origin[*e.line()]) + "]",
                         e.line());
    }
    throw;
  }

  // 4. Retrieve answers, one paragraph per task.
  std::vector<ParagraphOutput> outputs(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      const ParagraphJob& job = jobs[i];
      try {
        outputs[i] = ProcessParagraph(
            dataset.articles[job.article].paragraphs[job.paragraph], job,
            translations, alignments, abbreviations);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const size_t workers = std::max<size_t>(1, config.worker_count);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (size_t w = 0; w < workers; ++w) threads.emplace_back(work);
    for (std::thread& t : threads) t.join();
  }
  for (size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw AlignmentError(std::string(e.what()) + " [" +
                           Describe(dataset, {jobs[i].article,
                                              jobs[i].paragraph, "context"}) +
                           "]");
    }
  }

  // 5. Assemble in input order.
  PipelineResult result;
  Dataset& full = result.full;
  Dataset small;
  full.version = small.version = dataset.version;
  full.extra = small.extra = dataset.extra;
  size_t job_index = 0;
  for (const Article& article : dataset.articles) {
    Article full_article{article.title, {}, article.extra};
    Article small_article{article.title, {}, article.extra};
    for (size_t p = 0; p < article.paragraphs.size(); ++p) {
      ParagraphOutput& out = outputs[job_index++];
      if (out.full) full_article.paragraphs.push_back(std::move(*out.full));
      if (out.small) small_article.paragraphs.push_back(std::move(*out.small));
      for (AuditRecord& r : out.audit) result.audit.push_back(std::move(r));
    }
    const bool had_paragraphs = !article.paragraphs.empty();
    if (!full_article.paragraphs.empty() || !had_paragraphs)
      full.articles.push_back(std::move(full_article));
    if (!small_article.paragraphs.empty() || !had_paragraphs)
      small.articles.push_back(std::move(small_article));
  }

  const size_t total = ComputeStats(dataset).translated_examples;
  result.full_stats = ComputeStats(full);
  result.full_stats.total_examples = total;
  if (config.emit_small_variant) {
    result.small_stats = ComputeStats(small);
    result.small_stats->total_examples = total;
    result.small = std::move(small);
  }
  return result;
}

}  // namespace tarqa
