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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

#include "fivew1h/text_util.h"

namespace fivew1h {
namespace {

bool IsPunct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u);
}

bool IsWordChar(char c) { return !IsAsciiSpace(c) && !IsPunct(c); }

using NgramCounts = std::unordered_map<std::string, std::size_t>;

// Keys are the concatenated token strings, each prefixed by its length, so
// distinct token sequences never collide.
NgramCounts CountNgrams(const TokenSeq& seq, std::size_t n, std::size_t* total) {
  NgramCounts counts;
  const auto& t = seq.tokens();
  *total = t.size() >= n ? t.size() - n + 1 : 0;
  for (std::size_t i = 0; i < *total; ++i) {
    std::string key;
    for (std::size_t k = i; k < i + n; ++k) {
      key += std::to_string(t[k].size());
      key.push_back(':');
      key += t[k];
    }
    ++counts[key];
  }
  return counts;
}

MetricScores AverageScores(std::span<const MetricScores> scores) {
  MetricScores mean;
  if (scores.empty()) return mean;
  const double n = static_cast<double>(scores.size());
  auto add = [](ScoreTriple& acc, const ScoreTriple& s) {
    acc.precision += s.precision;
    acc.recall += s.recall;
    acc.f1 += s.f1;
  };
  auto scale = [n](ScoreTriple& s) {
    s.precision /= n;
    s.recall /= n;
    s.f1 /= n;
  };
  for (const MetricScores& s : scores) {
    add(mean.rouge1, s.rouge1);
    add(mean.rouge2, s.rouge2);
    add(mean.rougeL, s.rougeL);
    mean.bleu4 += s.bleu4;
  }
  scale(mean.rouge1);
  scale(mean.rouge2);
  scale(mean.rougeL);
  mean.bleu4 /= n;
  return mean;
}

}  // namespace

TokenSeq TokenSeq::FromTokens(std::vector<std::string> tokens) {
  TokenSeq seq;
  seq.tokens_ = std::move(tokens);
  return seq;
}

TokenSeq NormalizeTokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (IsAsciiSpace(c)) {
      flush();
    } else if (IsPunct(c)) {
      if (c == '-' && !current.empty() && i + 1 < text.size() &&
          IsWordChar(text[i + 1])) {
        current.push_back(c);
        continue;
      }
      flush();
      tokens.emplace_back(1, c);
    } else {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  flush();
  return TokenSeq::FromTokens(std::move(tokens));
}

ScoreTriple ScoreTriple::FromPR(double precision, double recall) {
  ScoreTriple s;
  s.precision = precision;
  s.recall = recall;
  s.f1 = precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
  return s;
}

MetricScores MetricScores::AllOnes() {
  MetricScores s;
  s.rouge1 = s.rouge2 = s.rougeL = ScoreTriple{1.0, 1.0, 1.0};
  s.bleu4 = 1.0;
  return s;
}

Json MetricScores::ToJson() const {
  auto triple = [](const ScoreTriple& t) {
    return Json{{"precision", t.precision}, {"recall", t.recall}, {"f1", t.f1}};
  };
  Json j;
  j["rouge1"] = triple(rouge1);
  j["rouge2"] = triple(rouge2);
  j["rougeL"] = triple(rougeL);
  j["bleu4"] = bleu4;
  return j;
}

ScoreTriple RougeN(const TokenSeq& candidate, const TokenSeq& reference, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ROUGE-N needs n >= 1");
  std::size_t cand_total = 0, ref_total = 0;
  NgramCounts cand = CountNgrams(candidate, n, &cand_total);
  NgramCounts ref = CountNgrams(reference, n, &ref_total);
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  const double p = cand_total ? static_cast<double>(overlap) / cand_total : 0.0;
  const double r = ref_total ? static_cast<double>(overlap) / ref_total : 0.0;
  return ScoreTriple::FromPR(p, r);
}

std::size_t LcsLength(const TokenSeq& a, const TokenSeq& b) {
  const auto& x = a.tokens();
  const auto& y = b.tokens();
  std::vector<std::size_t> prev(y.size() + 1, 0), row(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      row[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], row[j - 1]);
    }
    std::swap(prev, row);
  }
  return prev[y.size()];
}

ScoreTriple RougeL(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const double lcs = static_cast<double>(LcsLength(candidate, reference));
  return ScoreTriple::FromPR(lcs / candidate.size(), lcs / reference.size());
}

BleuBreakdown Bleu4Detailed(const TokenSeq& candidate,
                            std::span<const TokenSeq> references) {
  if (references.empty()) throw std::invalid_argument("BLEU needs at least one reference");
  BleuBreakdown b;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t total = 0;
    NgramCounts cand = CountNgrams(candidate, n, &total);
    std::unordered_map<std::string, std::size_t> max_ref;
    for (const TokenSeq& ref : references) {
      std::size_t ignored = 0;
      for (const auto& [gram, count] : CountNgrams(ref, n, &ignored)) {
        std::size_t& m = max_ref[gram];
        m = std::max(m, count);
      }
    }
    std::size_t clipped = 0;
    for (const auto& [gram, count] : cand) {
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) clipped += std::min(count, it->second);
    }
    b.clipped[n - 1] = clipped;
    b.totals[n - 1] = total;
    if (n == 1) {
      if (clipped == 0) return b;  // score 0
      b.precisions[0] = static_cast<double>(clipped) / total;
    } else if (clipped == 0) {
      b.precisions[n - 1] = 1.0 / static_cast<double>(total + 1);
    } else {
      b.precisions[n - 1] = static_cast<double>(clipped) / total;
    }
  }

  const std::size_t c = candidate.size();
  std::size_t r = references[0].size();
  for (const TokenSeq& ref : references) {
    const std::size_t len = ref.size();
    const std::size_t d = len > c ? len - c : c - len;
    const std::size_t best = r > c ? r - c : c - r;
    if (d < best || (d == best && len < r)) r = len;
  }
  b.brevity_penalty = c < r ? std::exp(1.0 - static_cast<double>(r) / c) : 1.0;
  double log_sum = 0.0;
  for (double p : b.precisions) log_sum += std::log(p);
  b.score = b.brevity_penalty * std::exp(log_sum / 4.0);
  return b;
}

double Bleu4(const TokenSeq& candidate, std::span<const TokenSeq> references) {
  return Bleu4Detailed(candidate, references).score;
}

MetricScores ScorePair(const TokenSeq& candidate, const TokenSeq& reference) {
  MetricScores s;
  s.rouge1 = RougeN(candidate, reference, 1);
  s.rouge2 = RougeN(candidate, reference, 2);
  s.rougeL = RougeL(candidate, reference);
  s.bleu4 = Bleu4(candidate, std::span<const TokenSeq>(&reference, 1));
  return s;
}

MetricScores ScoreElement(std::span<const std::string> predicted,
                          std::span<const std::string> gold, MatchMode mode) {
  auto join = [](std::span<const std::string> parts) {
    return JoinWithSpaces(std::vector<std::string>(parts.begin(), parts.end()));
  };
  const TokenSeq gold_all = NormalizeTokens(join(gold));
  const TokenSeq pred_all = NormalizeTokens(join(predicted));
  if (gold_all.empty()) return pred_all.empty() ? MetricScores::AllOnes() : MetricScores{};
  if (pred_all.empty()) return MetricScores{};

  if (mode == MatchMode::kConcat) return ScorePair(pred_all, gold_all);

  std::vector<TokenSeq> gold_tokens;
  for (const std::string& g : gold) {
    TokenSeq t = NormalizeTokens(g);
    if (!t.empty()) gold_tokens.push_back(std::move(t));
  }
  std::vector<MetricScores> pair_scores;
  for (const std::string& p : predicted) {
    TokenSeq pt = NormalizeTokens(p);
    if (pt.empty()) continue;
    std::size_t best = 0;
    double best_f = -1.0;
    for (std::size_t i = 0; i < gold_tokens.size(); ++i) {
      double f = RougeL(pt, gold_tokens[i]).f1;
      if (f > best_f) {
        best_f = f;
        best = i;
      }
    }
    pair_scores.push_back(ScorePair(pt, gold_tokens[best]));
  }
  return AverageScores(pair_scores);
}

}  // namespace fivew1h
