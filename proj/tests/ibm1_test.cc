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

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tarqa/backends.h"
#include "ibm1_oracle.h"
#include "testing.h"

namespace tarqa {
namespace {

using testing::HandEm;
using testing::OracleRun;

using Pairs = std::set<std::pair<size_t, size_t>>;

const std::vector<SentencePair>& ToyCorpus() {
  static const std::vector<SentencePair> kCorpus = {
      {{"la", "maison"}, {"the", "house"}},
      {{"la", "fleur"}, {"the", "flower"}}};
  return kCorpus;
}

void ExpectDistributions(const LexicalTable& table) {
  for (const auto& [src, row] : table.entries()) {
    double sum = 0.0;
    for (const auto& [tgt, p] : row) {
      EXPECT_GE(p, 0.0);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9) << src;
  }
}

TEST(TrainIbm1Test, OneIterationIsNormalizedCooccurrence) {
  // Computed by hand: under the uniform start every target word splits its
  // unit count evenly between the two source words of its sentence.
  const Ibm1Model model = TrainIbm1(ToyCorpus(), 1);
  const LexicalTable& t = model.table;
  EXPECT_DOUBLE_EQ(t.Prob("la", "the"), 0.5);
  EXPECT_DOUBLE_EQ(t.Prob("la", "house"), 0.25);
  EXPECT_DOUBLE_EQ(t.Prob("la", "flower"), 0.25);
  EXPECT_DOUBLE_EQ(t.Prob("maison", "the"), 0.5);
  EXPECT_DOUBLE_EQ(t.Prob("maison", "house"), 0.5);
  EXPECT_DOUBLE_EQ(t.Prob("fleur", "flower"), 0.5);
  EXPECT_DOUBLE_EQ(t.Prob("maison", "flower"), kUnseenProbability);
  ASSERT_EQ(model.log_likelihood.size(), 2u);
  EXPECT_NEAR(model.log_likelihood[0], 4 * std::log(1.0 / 3.0), 1e-12);
}

TEST(TrainIbm1Test, MatchesHandRunEm) {
  const int kIterations = 5;
  const Ibm1Model model = TrainIbm1(ToyCorpus(), kIterations);
  const OracleRun oracle = HandEm(ToyCorpus(), kIterations);
  for (const auto& [f, row] : oracle.t) {
    for (const auto& [e, p] : row) {
      EXPECT_NEAR(model.table.Prob(f, e), p, 1e-12) << f << " " << e;
    }
  }
  ASSERT_EQ(model.log_likelihood.size(), oracle.log_likelihood.size());
  for (size_t k = 0; k < oracle.log_likelihood.size(); ++k) {
    EXPECT_NEAR(model.log_likelihood[k], oracle.log_likelihood[k], 1e-9);
    if (k > 0) EXPECT_GE(model.log_likelihood[k], model.log_likelihood[k - 1]);
  }
  ExpectDistributions(model.table);
  EXPECT_GT(model.table.Prob("la", "the"), model.table.Prob("la", "house"));
  EXPECT_GT(model.table.Prob("maison", "house"), model.table.Prob("maison", "the"));
}

TEST(TrainIbm1Test, ArgmaxLinksToyCorpus) {
  const LexicalTable t = TrainIbm1(ToyCorpus(), 5).table;
  EXPECT_EQ(Ibm1Align(t, {"la", "maison"}, {"the", "house"}).pairs,
            (Pairs{{0, 0}, {1, 1}}));
  EXPECT_EQ(Ibm1Align(t, {"la", "fleur"}, {"the", "flower"}).pairs,
            (Pairs{{0, 0}, {1, 1}}));
}

TEST(TrainIbm1Test, CopyCorpusGivesDiagonal) {
  const std::vector<SentencePair> corpus = {
      {{"a", "b", "c"}, {"a", "b", "c"}},
      {{"b", "c", "d"}, {"b", "c", "d"}},
      {{"a", "d"}, {"a", "d"}},
      {{"c", "a"}, {"c", "a"}}};
  const LexicalTable t = TrainIbm1(corpus, 10).table;
  EXPECT_EQ(Ibm1Align(t, {"a", "b", "c"}, {"a", "b", "c"}).pairs,
            (Pairs{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_EQ(Ibm1Align(t, {"b", "c", "d"}, {"b", "c", "d"}).pairs,
            (Pairs{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(TrainIbm1Test, Errors) {
  EXPECT_THROW(TrainIbm1({}, 5), std::invalid_argument);
  EXPECT_THROW(TrainIbm1(ToyCorpus(), 0), std::invalid_argument);
}

TEST(TrainIbm1Test, MonotoneAndNormalizedOnRandomCorpora) {
  testing::Rng rng(5);
  const std::vector<std::string> src_words = {"a", "b", "c", "d", "e", "f"};
  const std::vector<std::string> tgt_words = {"u", "v", "w", "x", "y"};
  for (int round = 0; round < 30; ++round) {
    std::vector<SentencePair> corpus(testing::Uniform(rng, 1, 8));
    for (auto& pair : corpus) {
      for (size_t n = testing::Uniform(rng, 1, 5); n > 0; --n)
        pair.src.push_back(src_words[testing::Uniform(rng, 0, 5)]);
      for (size_t n = testing::Uniform(rng, 1, 5); n > 0; --n)
        pair.tgt.push_back(tgt_words[testing::Uniform(rng, 0, 4)]);
    }
    const Ibm1Model model = TrainIbm1(corpus, 6);
    for (size_t k = 1; k < model.log_likelihood.size(); ++k) {
      EXPECT_GE(model.log_likelihood[k], model.log_likelihood[k - 1] - 1e-12);
    }
    ExpectDistributions(model.table);
    const OracleRun oracle = HandEm(corpus, 6);
    for (const auto& [f, row] : oracle.t)
      for (const auto& [e, p] : row)
        EXPECT_NEAR(model.table.Prob(f, e), p, 1e-9);
  }
}

TEST(Ibm1AlignTest, DiagonalTable) {
  LexicalTable t;
  t.Set("a", "x", 1.0);
  t.Set("b", "y", 1.0);
  t.Set("c", "z", 1.0);
  EXPECT_EQ(Ibm1Align(t, {"a", "b", "c"}, {"x", "y", "z"}).pairs,
            (Pairs{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Ibm1AlignTest, UnknownWordsTieToFirstSource) {
  const LexicalTable t = TrainIbm1(ToyCorpus(), 5).table;
  EXPECT_EQ(Ibm1Align(t, {"la", "maison"}, {"q", "r", "s"}).pairs,
            (Pairs{{0, 0}, {0, 1}, {0, 2}}));
  EXPECT_TRUE(Ibm1Align(t, {}, {"q"}).pairs.empty());
}

TEST(LexicalTableTest, TsvRoundTrip) {
  testing::TempDir dir;
  const LexicalTable t = TrainIbm1(ToyCorpus(), 5).table;
  t.Save(dir / "t.tsv");
  const LexicalTable loaded = LexicalTable::Load(dir / "t.tsv");
  EXPECT_EQ(loaded, t);
  EXPECT_EQ(LexicalTable::Parse(t.Serialize()).Serialize(), t.Serialize());
  EXPECT_THROW(LexicalTable::Parse("a\tb\n"), std::exception);
  EXPECT_THROW(LexicalTable::Parse("a\tb\tnope\n"), std::exception);
}

}  // namespace
}  // namespace tarqa
