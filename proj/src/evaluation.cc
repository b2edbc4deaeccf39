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

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "tarqa/error.h"
#include "tarqa/text.h"

namespace tarqa {

const ArticleTable& ArticleTable::Default() {
  static const ArticleTable* const kDefault = [] {
    auto* table = new ArticleTable;
    table->Add("en", {U"a", U"an", U"the"});
    table->Add("es", {U"el", U"la", U"los", U"las", U"un", U"una", U"unos",
                      U"unas"});
    return table;
  }();
  return *kDefault;
}

void ArticleTable::Add(std::string language,
                       std::vector<std::u32string> articles) {
  table_[std::move(language)] =
      std::set<std::u32string>(articles.begin(), articles.end());
}

bool ArticleTable::Has(std::string_view language) const {
  return table_.find(language) != table_.end();
}

const std::set<std::u32string>& ArticleTable::Get(
    std::string_view language) const {
  auto it = table_.find(language);
  if (it == table_.end()) {
    throw std::invalid_argument("unknown language tag \"" +
                                std::string(language) + "\"");
  }
  return it->second;
}

std::vector<std::u32string> NormalizeAnswer(std::u32string_view text,
                                            std::string_view language,
                                            const ArticleTable& articles) {
  const std::set<std::u32string>& stop = articles.Get(language);
  std::u32string cleaned;
  cleaned.reserve(text.size());
  for (char32_t c : text) {
    if (!IsPunctuation(c)) cleaned.push_back(ToLowerSimple(c));
  }
  std::vector<std::u32string> tokens;
  size_t i = 0;
  while (i < cleaned.size()) {
    if (IsWhitespace(cleaned[i])) {
      ++i;
      continue;
    }
    const size_t begin = i;
    while (i < cleaned.size() && !IsWhitespace(cleaned[i])) ++i;
    std::u32string token = cleaned.substr(begin, i - begin);
    if (stop.count(token) == 0) tokens.push_back(std::move(token));
  }
  return tokens;
}

double ExactMatchScore(std::u32string_view prediction,
                       std::u32string_view gold, std::string_view language,
                       const ArticleTable& articles) {
  return NormalizeAnswer(prediction, language, articles) ==
                 NormalizeAnswer(gold, language, articles)
             ? 1.0
             : 0.0;
}

double F1Score(std::u32string_view prediction, std::u32string_view gold,
               std::string_view language, const ArticleTable& articles) {
  const auto pred = NormalizeAnswer(prediction, language, articles);
  const auto ref = NormalizeAnswer(gold, language, articles);
  if (pred.empty() || ref.empty()) return pred == ref ? 1.0 : 0.0;

  std::unordered_map<std::u32string, int> counts;
  for (const auto& t : ref) ++counts[t];
  size_t common = 0;
  for (const auto& t : pred) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  if (common == 0) return 0.0;
  const double precision =
      static_cast<double>(common) / static_cast<double>(pred.size());
  const double recall =
      static_cast<double>(common) / static_cast<double>(ref.size());
  return 2.0 * precision * recall / (precision + recall);
}

Predictions ParsePredictions(std::string_view json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw Error(std::string("malformed predictions JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw Error("predictions must be a JSON object mapping id to answer");
  }
  Predictions predictions;
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (!it.value().is_string()) {
      throw Error("prediction for \"" + it.key() + "\" is not a string");
    }
    predictions[it.key()] = it.value().get<std::string>();
  }
  return predictions;
}

Predictions ReadPredictions(const std::filesystem::path& path) {
  return ParsePredictions(ReadTextFile(path));
}

EvalReport Score(const Dataset& gold, const Predictions& predictions,
                 std::string_view language, const ArticleTable& articles) {
  articles.Get(language);  // validate the tag up front
  EvalReport report;
  double em_sum = 0.0;
  double f1_sum = 0.0;
  for (const Article& article : gold.articles) {
    for (const Paragraph& paragraph : article.paragraphs) {
      for (const QA& qa : paragraph.qas) {
        ++report.count;
        auto it = predictions.find(qa.id);
        if (it == predictions.end()) {
          report.missing_ids.push_back(qa.id);
          continue;
        }
        const std::u32string pred = DecodeUtf8(it->second);
        double em = 0.0;
        double f1 = 0.0;
        for (const Answer& answer : qa.answers) {
          const std::u32string ref = DecodeUtf8(answer.text);
          em = std::max(em, ExactMatchScore(pred, ref, language, articles));
          f1 = std::max(f1, F1Score(pred, ref, language, articles));
        }
        em_sum += em;
        f1_sum += f1;
      }
    }
  }
  if (report.count > 0) {
    report.exact_match = 100.0 * em_sum / static_cast<double>(report.count);
    report.f1 = 100.0 * f1_sum / static_cast<double>(report.count);
  }
  return report;
}

std::string FormatReport(const EvalReport& report) {
  Json j = Json::object();
  j["exact_match"] = report.exact_match;
  j["f1"] = report.f1;
  return j.dump();
}

}  // namespace tarqa
