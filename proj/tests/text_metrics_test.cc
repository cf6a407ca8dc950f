// Copyright 2026 The fivew1h Authors.
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

#include "fivew1h/text_metrics.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.h"

namespace fivew1h {
namespace {

// Expected values below were produced by tests/oracles/metric_oracle.py.
constexpr double kTol = 1e-12;

TokenSeq T(std::string_view s) { return NormalizeTokens(s); }

using Tokens = std::vector<std::string>;

TEST(TokenizerTest, LowercasesAndSplitsPunctuation) {
  EXPECT_EQ(T("The Cat, sat.").tokens(), (Tokens{"the", "cat", ",", "sat", "."}));
  EXPECT_EQ(T("  \tA\n b ").tokens(), (Tokens{"a", "b"}));
  EXPECT_TRUE(T("   ").empty());
}

TEST(TokenizerTest, InternalHyphenKept) {
  EXPECT_EQ(T("Tyne-Wear derby").tokens(), (Tokens{"tyne-wear", "derby"}));
  EXPECT_EQ(T("- x -").tokens(), (Tokens{"-", "x", "-"}));
  EXPECT_EQ(T("a--b").tokens(), (Tokens{"a", "-", "-", "b"}));
  EXPECT_EQ(T("don't").tokens(), (Tokens{"don", "'", "t"}));
}

TEST(TokenizerTest, NonAsciiIsWordMaterial) {
  EXPECT_EQ(T("Caf\xC3\xA9 \xC3\x89T\xC3\x89").tokens(),
            (Tokens{"caf\xC3\xA9", "\xC3\x89t\xC3\x89"}));
}

TEST(MetricsTest, WorkedExampleRouge) {
  TokenSeq c = T("the cat sat on the mat"), r = T("the cat is on the mat");
  ScoreTriple r1 = RougeN(c, r, 1);
  EXPECT_NEAR(r1.precision, 0.8333333333333334, kTol);
  EXPECT_NEAR(r1.recall, 0.8333333333333334, kTol);
  EXPECT_NEAR(r1.f1, 0.8333333333333334, kTol);
  EXPECT_NEAR(RougeN(c, r, 2).f1, 0.6, kTol);
  EXPECT_EQ(LcsLength(c, r), 5u);
  EXPECT_NEAR(RougeL(c, r).f1, 0.8333333333333334, kTol);
}

TEST(MetricsTest, WorkedExampleBleu) {
  TokenSeq c = T("the cat sat on the mat"), r = T("the cat is on the mat");
  BleuBreakdown b = Bleu4Detailed(c, std::span(&r, 1));
  EXPECT_NEAR(b.score, 0.4204482076268573, kTol);
  EXPECT_NEAR(b.precisions[0], 5.0 / 6.0, kTol);
  EXPECT_NEAR(b.precisions[1], 0.6, kTol);
  EXPECT_NEAR(b.precisions[2], 0.25, kTol);
  EXPECT_NEAR(b.precisions[3], 0.25, kTol);
  EXPECT_DOUBLE_EQ(b.brevity_penalty, 1.0);
}

TEST(MetricsTest, BleuClipsRepeatedTokens) {
  TokenSeq c = T("the the the the"), r = T("the cat");
  BleuBreakdown b = Bleu4Detailed(c, std::span(&r, 1));
  EXPECT_EQ(b.clipped[0], 1u);
  EXPECT_NEAR(b.precisions[0], 0.25, kTol);
  EXPECT_NEAR(b.precisions[1], 0.25, kTol);
  EXPECT_NEAR(b.precisions[2], 1.0 / 3.0, kTol);
  EXPECT_NEAR(b.precisions[3], 0.5, kTol);
  EXPECT_NEAR(b.score, 0.31947155212313627, kTol);
}

TEST(MetricsTest, BleuBrevityPenalty) {
  TokenSeq c = T("the cat"), r = T("the cat sat on the mat");
  BleuBreakdown b = Bleu4Detailed(c, std::span(&r, 1));
  EXPECT_NEAR(b.brevity_penalty, std::exp(1.0 - 3.0), kTol);
  EXPECT_NEAR(b.score, 0.1353352832366127, kTol);
}

TEST(MetricsTest, BleuClosestReferenceLength) {
  std::vector<TokenSeq> refs = {T("a b c d e f g h"), T("a b c")};
  // Candidate of 4 tokens: closest reference has 3 tokens, so no penalty.
  EXPECT_DOUBLE_EQ(Bleu4Detailed(T("a b c d"), refs).brevity_penalty, 1.0);
  // Equal distance picks the shorter reference.
  std::vector<TokenSeq> tie = {T("a b c d e f"), T("a b")};
  EXPECT_DOUBLE_EQ(Bleu4Detailed(T("a b c d"), tie).brevity_penalty, 1.0);
  EXPECT_THROW(Bleu4(T("a"), {}), std::invalid_argument);
}

TEST(MetricsTest, ZeroOverlapAndEmpty) {
  TokenSeq a = T("alpha beta"), b = T("gamma delta");
  EXPECT_EQ(RougeN(a, b, 1).f1, 0.0);
  EXPECT_EQ(Bleu4(a, std::span(&b, 1)), 0.0);
  TokenSeq empty;
  EXPECT_EQ(RougeN(empty, a, 1).f1, 0.0);
  EXPECT_EQ(RougeL(empty, a).f1, 0.0);
  EXPECT_EQ(Bleu4(empty, std::span(&a, 1)), 0.0);
  EXPECT_THROW(RougeN(a, a, 0), std::invalid_argument);
}

TEST(MetricsTest, IdentityGivesOne) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    auto words = testing::RandomWords(rng, 1 + rng() % 30, 20);
    TokenSeq s = TokenSeq::FromTokens(words);
    ASSERT_NEAR(RougeN(s, s, 1).f1, 1.0, kTol);
    ASSERT_NEAR(RougeL(s, s).f1, 1.0, kTol);
    if (s.size() >= 2) ASSERT_NEAR(RougeN(s, s, 2).f1, 1.0, kTol);
    if (s.size() >= 4) ASSERT_NEAR(Bleu4(s, std::span(&s, 1)), 1.0, kTol);
  }
}

TEST(MetricsTest, SwapSymmetryAndRange) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    TokenSeq a = TokenSeq::FromTokens(testing::RandomWords(rng, rng() % 25, 8));
    TokenSeq b = TokenSeq::FromTokens(testing::RandomWords(rng, rng() % 25, 8));
    for (std::size_t n : {1, 2}) {
      ScoreTriple ab = RougeN(a, b, n), ba = RougeN(b, a, n);
      ASSERT_EQ(ab.precision, ba.recall);
      ASSERT_EQ(ab.recall, ba.precision);
      ASSERT_EQ(ab.f1, ba.f1);
    }
    ScoreTriple lab = RougeL(a, b), lba = RougeL(b, a);
    ASSERT_EQ(lab.precision, lba.recall);
    ASSERT_EQ(lab.f1, lba.f1);
    ASSERT_EQ(LcsLength(a, b), LcsLength(b, a));
    if (!b.empty()) {
      double bl = Bleu4(a, std::span(&b, 1));
      ASSERT_GE(bl, 0.0);
      ASSERT_LE(bl, 1.0 + 1e-12);
    }
    for (const ScoreTriple& s : {RougeN(a, b, 1), RougeN(a, b, 2), lab}) {
      ASSERT_GE(s.f1, 0.0);
      ASSERT_LE(s.f1, 1.0 + 1e-12);
    }
  }
}

TEST(ScoreElementTest, EmptyConventions) {
  std::vector<std::string> none, blank = {"  "}, some = {"a storm"};
  MetricScores both_empty = ScoreElement(none, blank);
  EXPECT_EQ(both_empty.rouge1.f1, 1.0);
  EXPECT_EQ(both_empty.bleu4, 1.0);
  EXPECT_EQ(ScoreElement(some, none).rouge1.f1, 0.0);
  EXPECT_EQ(ScoreElement(none, some).rougeL.f1, 0.0);
  EXPECT_EQ(ScoreElement(blank, some, MatchMode::kBestMatch).bleu4, 0.0);
}

TEST(ScoreElementTest, ConcatJoinsSpans) {
  std::vector<std::string> pred = {"the cat sat", "on the mat"};
  std::vector<std::string> gold = {"the cat is on the mat"};
  MetricScores s = ScoreElement(pred, gold);
  EXPECT_NEAR(s.bleu4, 0.4204482076268573, kTol);
  EXPECT_NEAR(s.rougeL.f1, 0.8333333333333334, kTol);
}

TEST(ScoreElementTest, BestMatchPairsAndAverages) {
  std::vector<std::string> gold = {"Alice Smith", "Bob Jones"};
  std::vector<std::string> pred = {"Bob Jones", "Alice"};
  MetricScores s = ScoreElement(pred, gold, MatchMode::kBestMatch);
  // Pair 1 is exact; pair 2 has P=1, R=0.5.
  EXPECT_NEAR(s.rouge1.precision, 1.0, kTol);
  EXPECT_NEAR(s.rouge1.recall, 0.75, kTol);
  EXPECT_NEAR(s.rouge1.f1, (1.0 + 2.0 / 3.0) / 2.0, kTol);
  // Gold spans may be reused.
  std::vector<std::string> twice = {"Bob Jones", "Bob Jones"};
  EXPECT_NEAR(ScoreElement(twice, gold, MatchMode::kBestMatch).rouge1.f1, 1.0, kTol);
}

TEST(MetricScoresTest, JsonShape) {
  Json j = MetricScores::AllOnes().ToJson();
  EXPECT_EQ(j["rouge1"]["f1"], 1.0);
  EXPECT_EQ(j["bleu4"], 1.0);
}

}  // namespace
}  // namespace fivew1h
