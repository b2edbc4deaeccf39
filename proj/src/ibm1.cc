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

#include "tarqa/ibm1.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "tarqa/error.h"
#include "tarqa/squad.h"

namespace tarqa {
namespace {

using WordId = uint32_t;

struct Vocabulary {
  std::unordered_map<std::string, WordId> ids;
  std::vector<std::string> words;

  WordId Intern(const std::string& word) {
    auto [it, inserted] = ids.emplace(word, static_cast<WordId>(words.size()));
    if (inserted) words.push_back(word);
    return it->second;
  }
};

uint64_t Key(WordId src, WordId tgt) {
  return (static_cast<uint64_t>(src) << 32) | tgt;
}

struct EncodedPair {
  std::vector<WordId> src;
  std::vector<WordId> tgt;
};

// E-step over the whole corpus. Accumulates expected counts when `counts` is
// non-null and returns the corpus log-likelihood under `t`.
double ExpectationStep(const std::vector<EncodedPair>& corpus,
                       const std::unordered_map<uint64_t, double>& t,
                       std::unordered_map<uint64_t, double>* counts,
                       std::vector<double>* totals) {
  double log_likelihood = 0.0;
  std::vector<double> probs;
  for (const EncodedPair& pair : corpus) {
    probs.resize(pair.src.size());
    const double length = static_cast<double>(pair.src.size());
    for (WordId f : pair.tgt) {
      double denominator = 0.0;
      for (size_t i = 0; i < pair.src.size(); ++i) {
        probs[i] = t.at(Key(pair.src[i], f));
        denominator += probs[i];
      }
      log_likelihood += std::log(denominator / length);
      if (counts == nullptr) continue;
      for (size_t i = 0; i < pair.src.size(); ++i) {
        const double posterior = probs[i] / denominator;
        (*counts)[Key(pair.src[i], f)] += posterior;
        (*totals)[pair.src[i]] += posterior;
      }
    }
  }
  return log_likelihood;
}

}  // namespace

double LexicalTable::Prob(const std::string& src,
                          const std::string& tgt) const {
  auto row = entries_.find(src);
  if (row == entries_.end()) return kUnseenProbability;
  auto cell = row->second.find(tgt);
  if (cell == row->second.end()) return kUnseenProbability;
  return cell->second;
}

void LexicalTable::Set(const std::string& src, const std::string& tgt,
                       double prob) {
  entries_[src][tgt] = prob;
}

std::string LexicalTable::Serialize() const {
  std::string out;
  char buffer[64];
  for (const auto& [src, row] : entries_) {
    for (const auto& [tgt, prob] : row) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", prob);
      out += src;
      out += '\t';
      out += tgt;
      out += '\t';
      out += buffer;
      out += '\n';
    }
  }
  return out;
}

LexicalTable LexicalTable::Parse(std::string_view tsv) {
  LexicalTable table;
  std::istringstream in{std::string(tsv)};
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t first = line.find('\t');
    const size_t second =
        first == std::string::npos ? first : line.find('\t', first + 1);
    double prob = 0.0;
    bool ok = second != std::string::npos;
    if (ok) {
      const char* begin = line.data() + second + 1;
      const char* end = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(begin, end, prob);
      ok = ec == std::errc() && ptr == end;
    }
    if (!ok) {
      throw Error("lexical table line " + std::to_string(line_number) +
                  ": expected src<TAB>tgt<TAB>prob");
    }
    table.Set(line.substr(0, first), line.substr(first + 1, second - first - 1),
              prob);
  }
  return table;
}

void LexicalTable::Save(const std::filesystem::path& path) const {
  WriteTextFile(path, Serialize());
}

LexicalTable LexicalTable::Load(const std::filesystem::path& path) {
  return Parse(ReadTextFile(path));
}

Ibm1Model TrainIbm1(const std::vector<SentencePair>& corpus, int iterations) {
  if (corpus.empty()) throw std::invalid_argument("IBM-1 corpus is empty");
  if (iterations < 1) {
    throw std::invalid_argument("IBM-1 needs at least one iteration");
  }

  Vocabulary src_vocab;
  Vocabulary tgt_vocab;
  std::vector<EncodedPair> encoded;
  encoded.reserve(corpus.size());
  for (const SentencePair& pair : corpus) {
    if (pair.src.empty() || pair.tgt.empty()) continue;
    EncodedPair e;
    for (const std::string& w : pair.src) e.src.push_back(src_vocab.Intern(w));
    for (const std::string& w : pair.tgt) e.tgt.push_back(tgt_vocab.Intern(w));
    encoded.push_back(std::move(e));
  }

  // Uniform start over the target vocabulary, stored for co-occurring pairs
  // only (the only ones the E-step reads).
  std::unordered_map<uint64_t, double> t;
  const double uniform = 1.0 / static_cast<double>(tgt_vocab.words.size());
  for (const EncodedPair& pair : encoded)
    for (WordId e : pair.src)
      for (WordId f : pair.tgt) t.emplace(Key(e, f), uniform);

  Ibm1Model model;
  for (int iteration = 0; iteration < iterations; ++iteration) {
    std::unordered_map<uint64_t, double> counts;
    std::vector<double> totals(src_vocab.words.size(), 0.0);
    model.log_likelihood.push_back(
        ExpectationStep(encoded, t, &counts, &totals));
    for (auto& [key, prob] : t) {
      prob = counts[key] / totals[static_cast<WordId>(key >> 32)];
    }
  }
  model.log_likelihood.push_back(
      ExpectationStep(encoded, t, nullptr, nullptr));

  for (const auto& [key, prob] : t) {
    model.table.Set(src_vocab.words[key >> 32],
                    tgt_vocab.words[key & 0xFFFFFFFFu], prob);
  }
  return model;
}

TokenAlignment Ibm1Align(const LexicalTable& table,
                         const std::vector<std::string>& src_tokens,
                         const std::vector<std::string>& tgt_tokens) {
  TokenAlignment alignment;
  if (src_tokens.empty()) return alignment;
  for (size_t j = 0; j < tgt_tokens.size(); ++j) {
    size_t best = 0;
    double best_prob = table.Prob(src_tokens[0], tgt_tokens[j]);
    for (size_t i = 1; i < src_tokens.size(); ++i) {
      const double prob = table.Prob(src_tokens[i], tgt_tokens[j]);
      if (prob > best_prob) {
        best = i;
        best_prob = prob;
      }
    }
    alignment.pairs.emplace(best, j);
  }
  return alignment;
}

}  // namespace tarqa
