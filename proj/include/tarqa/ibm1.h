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

// IBM Model 1 lexical translation model, trained with EM. Serves as a
// self-contained aligner when no external tool is available.
//
// t(tgt | src) starts uniform over the target vocabulary. There is no NULL
// source word; every target token aligns to some source token. Pairs never
// seen in training get the floor probability kUnseenProbability.

#ifndef TARQA_IBM1_H_
#define TARQA_IBM1_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tarqa/backends.h"

namespace tarqa {

inline constexpr double kUnseenProbability = 1e-6;

class LexicalTable {
 public:
  // t(tgt | src), or kUnseenProbability for pairs not in the table.
  double Prob(const std::string& src, const std::string& tgt) const;
  void Set(const std::string& src, const std::string& tgt, double prob);

  // src -> (tgt -> prob), ordered for deterministic output.
  const std::map<std::string, std::map<std::string, double>>& entries() const {
    return entries_;
  }

  // TSV `src<TAB>tgt<TAB>prob`, sorted by src then tgt, probabilities
  // printed with round-trip precision.
  std::string Serialize() const;
  static LexicalTable Parse(std::string_view tsv);
  void Save(const std::filesystem::path& path) const;
  static LexicalTable Load(const std::filesystem::path& path);

  bool operator==(const LexicalTable&) const = default;

 private:
  std::map<std::string, std::map<std::string, double>> entries_;
};

struct Ibm1Model {
  LexicalTable table;
  // Corpus log-likelihood sum_s sum_j log(1/l_s * sum_i t(f_j | e_i)) under
  // the initial table and after each M-step: iterations + 1 values.
  std::vector<double> log_likelihood;
};

// Throws std::invalid_argument on an empty corpus or iterations < 1.
Ibm1Model TrainIbm1(const std::vector<SentencePair>& corpus, int iterations);

// Each target position j links to argmax_i t(tgt_j | src_i), ties going to
// the smallest i. Empty when either side is empty.
TokenAlignment Ibm1Align(const LexicalTable& table,
                         const std::vector<std::string>& src_tokens,
                         const std::vector<std::string>& tgt_tokens);

}  // namespace tarqa

#endif  // TARQA_IBM1_H_
