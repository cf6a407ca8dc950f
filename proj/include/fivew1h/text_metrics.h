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

// ROUGE-1/2/L and BLEU-4 over normalized token sequences. All scores are in
// [0, 1]; percentage scaling happens in the report layer.

#ifndef FIVEW1H_TEXT_METRICS_H_
#define FIVEW1H_TEXT_METRICS_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fivew1h/io.h"

namespace fivew1h {

// Lowercased tokens with no whitespace. Build through NormalizeTokens or
// FromTokens.
class TokenSeq {
 public:
  TokenSeq() = default;
  // Takes tokens as given; they must already be normalized.
  static TokenSeq FromTokens(std::vector<std::string> tokens);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;

 private:
  std::vector<std::string> tokens_;
};

// ASCII-lowercases, splits on whitespace and detaches ASCII punctuation as
// single-character tokens. A hyphen between two word characters stays part
// of the word ("tyne-wear"). Non-ASCII bytes are word characters.
TokenSeq NormalizeTokens(std::string_view text);

struct ScoreTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static ScoreTriple FromPR(double precision, double recall);
};

struct MetricScores {
  ScoreTriple rouge1;
  ScoreTriple rouge2;
  ScoreTriple rougeL;
  double bleu4 = 0.0;

  static MetricScores AllOnes();
  Json ToJson() const;
};

// Clipped n-gram overlap. Empty denominators give 0. Requires n >= 1.
ScoreTriple RougeN(const TokenSeq& candidate, const TokenSeq& reference, std::size_t n);

std::size_t LcsLength(const TokenSeq& a, const TokenSeq& b);
ScoreTriple RougeL(const TokenSeq& candidate, const TokenSeq& reference);

struct BleuBreakdown {
  // Modified precisions for n = 1..4, after smoothing.
  std::array<double, 4> precisions{};
  std::array<std::size_t, 4> clipped{};
  std::array<std::size_t, 4> totals{};
  double brevity_penalty = 1.0;
  double score = 0.0;
};

// Sentence BLEU-4 with uniform weights. Counts are clipped by the maximum
// count over references; r is the reference length closest to the
// candidate length (shorter wins ties). For n >= 2 a zero clipped count is
// smoothed to 1 / (total + 1); a zero unigram precision gives score 0.
// Requires a non-empty reference list.
BleuBreakdown Bleu4Detailed(const TokenSeq& candidate, std::span<const TokenSeq> references);
double Bleu4(const TokenSeq& candidate, std::span<const TokenSeq> references);

MetricScores ScorePair(const TokenSeq& candidate, const TokenSeq& reference);

enum class MatchMode {
  // Join each list with single spaces and score once.
  kConcat,
  // Pair every predicted span with its best ROUGE-L gold span (gold spans
  // may be reused) and average the pair scores.
  kBestMatch,
};

// Empty gold with empty prediction scores 1 everywhere; empty gold with a
// non-empty prediction scores 0.
MetricScores ScoreElement(std::span<const std::string> predicted,
                          std::span<const std::string> gold,
                          MatchMode mode = MatchMode::kConcat);

}  // namespace fivew1h

#endif  // FIVEW1H_TEXT_METRICS_H_
