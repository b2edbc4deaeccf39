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

// Multilingual Exact Match / F1 for extractive QA, following the MLQA
// generalization of the SQuAD v1.1 evaluation script.
//
// Normalization: simple lowercase, delete Unicode punctuation (P*), drop
// whole-token articles of the language, split on whitespace.

#ifndef TARQA_EVALUATION_H_
#define TARQA_EVALUATION_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tarqa/squad.h"

namespace tarqa {

// Language tag -> articles removed during normalization.
class ArticleTable {
 public:
  // en: a an the; es: el la los las un una unos unas.
  static const ArticleTable& Default();

  void Add(std::string language, std::vector<std::u32string> articles);
  bool Has(std::string_view language) const;
  // Throws std::invalid_argument on an unknown language.
  const std::set<std::u32string>& Get(std::string_view language) const;

 private:
  std::map<std::string, std::set<std::u32string>, std::less<>> table_;
};

std::vector<std::u32string> NormalizeAnswer(
    std::u32string_view text, std::string_view language,
    const ArticleTable& articles = ArticleTable::Default());

double ExactMatchScore(std::u32string_view prediction,
                       std::u32string_view gold, std::string_view language,
                       const ArticleTable& articles = ArticleTable::Default());

// Multiset token overlap F1 in [0, 1]. When either side normalizes to no
// tokens the score is 1 if both do and 0 otherwise.
double F1Score(std::u32string_view prediction, std::u32string_view gold,
               std::string_view language,
               const ArticleTable& articles = ArticleTable::Default());

using Predictions = std::map<std::string, std::string>;

// JSON object id -> answer string. Throws Error on unreadable input.
Predictions ParsePredictions(std::string_view json_text);
Predictions ReadPredictions(const std::filesystem::path& path);

struct EvalReport {
  double exact_match = 0.0;  // percent
  double f1 = 0.0;           // percent
  size_t count = 0;
  // Gold ids without a prediction; each scored as zero.
  std::vector<std::string> missing_ids;
};

// Per question: max over its gold answers. Dataset scores: mean x 100 over
// every gold question.
EvalReport Score(const Dataset& gold, const Predictions& predictions,
                 std::string_view language,
                 const ArticleTable& articles = ArticleTable::Default());

// {"exact_match": x, "f1": y}
std::string FormatReport(const EvalReport& report);

}  // namespace tarqa

#endif  // TARQA_EVALUATION_H_
