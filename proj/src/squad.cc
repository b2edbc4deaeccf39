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

#include "tarqa/squad.h"

#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "tarqa/error.h"
#include "tarqa/text.h"

namespace tarqa {
namespace {

// Location of the value being parsed, for error messages.
std::string Where(const std::string& path) { return " at " + path; }

const Json& Require(const Json& object, const char* key,
                    const std::string& path) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw DatasetError(std::string("missing required key \"") + key + "\"" +
                       Where(path));
  }
  return *it;
}

std::string RequireString(const Json& object, const char* key,
                          const std::string& path) {
  const Json& value = Require(object, key, path);
  if (!value.is_string()) {
    throw DatasetError(std::string("key \"") + key + "\" must be a string" +
                       Where(path));
  }
  return value.get<std::string>();
}

const Json& RequireArray(const Json& object, const char* key,
                         const std::string& path) {
  const Json& value = Require(object, key, path);
  if (!value.is_array()) {
    throw DatasetError(std::string("key \"") + key + "\" must be an array" +
                       Where(path));
  }
  return value;
}

void RequireObject(const Json& value, const std::string& path) {
  if (!value.is_object()) {
    throw DatasetError("expected a JSON object" + Where(path));
  }
}

Json Extras(const Json& object, std::initializer_list<const char*> known) {
  Json extra = Json::object();
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool is_known = false;
    for (const char* k : known) is_known = is_known || it.key() == k;
    if (!is_known) extra[it.key()] = it.value();
  }
  return extra;
}

Answer ParseAnswer(const Json& j, const std::string& path) {
  RequireObject(j, path);
  Answer answer;
  answer.text = RequireString(j, "text", path);
  const Json& start = Require(j, "answer_start", path);
  if (!start.is_number_integer()) {
    throw DatasetError("key \"answer_start\" must be an integer" + Where(path));
  }
  answer.answer_start = start.get<int64_t>();
  answer.extra = Extras(j, {"text", "answer_start"});
  return answer;
}

QA ParseQa(const Json& j, const std::string& path) {
  RequireObject(j, path);
  QA qa;
  qa.id = RequireString(j, "id", path);
  qa.question = RequireString(j, "question", path);
  const Json& answers = RequireArray(j, "answers", path);
  for (size_t m = 0; m < answers.size(); ++m) {
    qa.answers.push_back(
        ParseAnswer(answers[m], path + ".answers[" + std::to_string(m) + "]"));
  }
  qa.extra = Extras(j, {"id", "question", "answers"});
  return qa;
}

Paragraph ParseParagraph(const Json& j, const std::string& path) {
  RequireObject(j, path);
  Paragraph paragraph;
  paragraph.context = RequireString(j, "context", path);
  const Json& qas = RequireArray(j, "qas", path);
  for (size_t k = 0; k < qas.size(); ++k) {
    paragraph.qas.push_back(
        ParseQa(qas[k], path + ".qas[" + std::to_string(k) + "]"));
  }
  paragraph.extra = Extras(j, {"context", "qas"});
  return paragraph;
}

Article ParseArticle(const Json& j, const std::string& path) {
  RequireObject(j, path);
  Article article;
  article.title = RequireString(j, "title", path);
  const Json& paragraphs = RequireArray(j, "paragraphs", path);
  for (size_t p = 0; p < paragraphs.size(); ++p) {
    article.paragraphs.push_back(ParseParagraph(
        paragraphs[p], path + ".paragraphs[" + std::to_string(p) + "]"));
  }
  article.extra = Extras(j, {"title", "paragraphs"});
  return article;
}

void AppendExtras(Json& out, const Json& extra) {
  for (auto it = extra.begin(); it != extra.end(); ++it) {
    out[it.key()] = it.value();
  }
}

Json ToJson(const Dataset& ds) {
  Json root = Json::object();
  if (ds.version) root["version"] = *ds.version;
  Json data = Json::array();
  for (const Article& article : ds.articles) {
    Json a = Json::object();
    a["title"] = article.title;
    Json paragraphs = Json::array();
    for (const Paragraph& paragraph : article.paragraphs) {
      Json p = Json::object();
      p["context"] = paragraph.context;
      Json qas = Json::array();
      for (const QA& qa : paragraph.qas) {
        Json q = Json::object();
        q["id"] = qa.id;
        q["question"] = qa.question;
        Json answers = Json::array();
        for (const Answer& answer : qa.answers) {
          Json an = Json::object();
          an["text"] = answer.text;
          an["answer_start"] = answer.answer_start;
          AppendExtras(an, answer.extra);
          answers.push_back(std::move(an));
        }
        q["answers"] = std::move(answers);
        AppendExtras(q, qa.extra);
        qas.push_back(std::move(q));
      }
      p["qas"] = std::move(qas);
      AppendExtras(p, paragraph.extra);
      paragraphs.push_back(std::move(p));
    }
    a["paragraphs"] = std::move(paragraphs);
    AppendExtras(a, article.extra);
    data.push_back(std::move(a));
  }
  root["data"] = std::move(data);
  AppendExtras(root, ds.extra);
  return root;
}

}  // namespace

size_t Dataset::ParagraphCount() const {
  size_t n = 0;
  for (const Article& a : articles) n += a.paragraphs.size();
  return n;
}

size_t Dataset::QuestionCount() const {
  size_t n = 0;
  for (const Article& a : articles)
    for (const Paragraph& p : a.paragraphs) n += p.qas.size();
  return n;
}

size_t Dataset::AnswerCount() const {
  size_t n = 0;
  for (const Article& a : articles)
    for (const Paragraph& p : a.paragraphs)
      for (const QA& qa : p.qas) n += qa.answers.size();
  return n;
}

std::vector<SpanIssue> ValidateSpans(const Dataset& dataset) {
  std::vector<SpanIssue> issues;
  for (const Article& article : dataset.articles) {
    for (const Paragraph& paragraph : article.paragraphs) {
      const std::u32string context = DecodeUtf8(paragraph.context);
      for (const QA& qa : paragraph.qas) {
        for (size_t m = 0; m < qa.answers.size(); ++m) {
          const Answer& answer = qa.answers[m];
          const std::u32string text = DecodeUtf8(answer.text);
          const int64_t start = answer.answer_start;
          const int64_t end = start + static_cast<int64_t>(text.size());
          std::string message;
          if (start < 0) {
            message = "negative answer_start " + std::to_string(start);
          } else if (end > static_cast<int64_t>(context.size())) {
            message = "span [" + std::to_string(start) + ", " +
                      std::to_string(end) + ") exceeds context length " +
                      std::to_string(context.size());
          } else if (context.compare(static_cast<size_t>(start), text.size(),
                                     text) != 0) {
            message = "context at " + std::to_string(start) + " reads \"" +
                      EncodeUtf8(context.substr(static_cast<size_t>(start),
                                                text.size())) +
                      "\", answer text is \"" + answer.text + "\"";
          }
          if (!message.empty()) issues.push_back({qa.id, m, message});
        }
      }
    }
  }
  return issues;
}

Dataset ParseDataset(std::string_view json_text, const ReadOptions& options) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw DatasetError(std::string("malformed JSON: ") + e.what());
  }
  RequireObject(root, "$");

  Dataset ds;
  if (auto it = root.find("version"); it != root.end()) {
    if (!it->is_string()) throw DatasetError("\"version\" must be a string");
    ds.version = it->get<std::string>();
  }
  const Json& data = RequireArray(root, "data", "$");
  for (size_t i = 0; i < data.size(); ++i) {
    ds.articles.push_back(
        ParseArticle(data[i], "$.data[" + std::to_string(i) + "]"));
  }
  ds.extra = Extras(root, {"version", "data"});

  std::set<std::string> ids;
  for (const Article& a : ds.articles)
    for (const Paragraph& p : a.paragraphs)
      for (const QA& qa : p.qas)
        if (!ids.insert(qa.id).second)
          throw DatasetError("duplicate QA id \"" + qa.id + "\"");

  std::vector<SpanIssue> issues;
  try {
    issues = ValidateSpans(ds);
  } catch (const std::invalid_argument& e) {
    throw DatasetError(std::string("dataset is not valid UTF-8: ") + e.what());
  }
  if (issues.empty()) return ds;

  if (!options.lenient) {
    std::ostringstream msg;
    msg << issues.size() << " answer span(s) inconsistent with context:";
    for (const SpanIssue& issue : issues) {
      msg << "\n  QA " << issue.qa_id << " answer " << issue.answer_index
          << ": " << issue.message;
    }
    throw DatasetError(msg.str());
  }
  size_t next = 0;
  for (Article& a : ds.articles)
    for (Paragraph& p : a.paragraphs)
      for (QA& qa : p.qas)
        for (size_t m = 0; m < qa.answers.size(); ++m)
          if (next < issues.size() && issues[next].qa_id == qa.id &&
              issues[next].answer_index == m) {
            qa.answers[m].span_invalid = true;
            ++next;
          }
  return ds;
}

Dataset ReadDataset(const std::filesystem::path& path,
                    const ReadOptions& options) {
  return ParseDataset(ReadTextFile(path), options);
}

std::string SerializeDataset(const Dataset& dataset) {
  return ToJson(dataset).dump(-1, ' ', false,
                              Json::error_handler_t::strict);
}

void WriteDataset(const Dataset& dataset, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeDataset(dataset));
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void WriteTextFile(const std::filesystem::path& path,
                   std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace tarqa
