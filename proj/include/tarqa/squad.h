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

// SQuAD v1.1 object tree and its JSON reader/writer.
//
// Key names are exactly those of the SQuAD v1.1 files:
//   {"version", "data": [{"title", "paragraphs": [{"context",
//     "qas": [{"id", "question", "answers": [{"text", "answer_start"}]}]}]}]}
// Any other key found at any level is kept in `extra` and written back in
// its original position order after the known keys.
//
// answer_start counts Unicode scalar values, never bytes.

#ifndef TARQA_SQUAD_H_
#define TARQA_SQUAD_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace tarqa {

using Json = nlohmann::ordered_json;

struct Answer {
  std::string text;
  int64_t answer_start = 0;
  Json extra = Json::object();
  // Set by a lenient read when the span does not match the context. Never
  // serialized.
  bool span_invalid = false;

  bool operator==(const Answer&) const = default;
};

struct QA {
  std::string id;
  std::string question;
  std::vector<Answer> answers;
  Json extra = Json::object();

  bool operator==(const QA&) const = default;
};

struct Paragraph {
  std::string context;
  std::vector<QA> qas;
  Json extra = Json::object();

  bool operator==(const Paragraph&) const = default;
};

struct Article {
  std::string title;
  std::vector<Paragraph> paragraphs;
  Json extra = Json::object();

  bool operator==(const Article&) const = default;
};

struct Dataset {
  std::optional<std::string> version;
  std::vector<Article> articles;
  Json extra = Json::object();

  bool operator==(const Dataset&) const = default;

  size_t ParagraphCount() const;
  size_t QuestionCount() const;
  size_t AnswerCount() const;
};

struct ReadOptions {
  // Keep answers whose span is inconsistent with the context, marking them
  // span_invalid, instead of failing.
  bool lenient = false;
};

struct SpanIssue {
  std::string qa_id;
  size_t answer_index = 0;
  std::string message;
};

// Checks 0 <= answer_start, answer_start + len(text) <= len(context) and
// context[answer_start : answer_start + len(text)] == text for every answer.
std::vector<SpanIssue> ValidateSpans(const Dataset& dataset);

// Both throw DatasetError on malformed JSON, missing or mistyped keys,
// duplicate QA ids and (unless lenient) span inconsistencies. The error
// message names every offending QA id.
Dataset ParseDataset(std::string_view json_text, const ReadOptions& options = {});
Dataset ReadDataset(const std::filesystem::path& path,
                    const ReadOptions& options = {});

// Compact UTF-8 JSON, non-ASCII characters written verbatim.
std::string SerializeDataset(const Dataset& dataset);
// Throws Error on I/O failure.
void WriteDataset(const Dataset& dataset, const std::filesystem::path& path);

// Small file helpers shared by the pipeline and the CLI.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view content);

}  // namespace tarqa

#endif  // TARQA_SQUAD_H_
