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

// Per-element aggregation of scored runs, report tables and the
// cross-dataset transfer matrix.

#ifndef FIVEW1H_REPORT_H_
#define FIVEW1H_REPORT_H_

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fivew1h/corpus.h"
#include "fivew1h/elements.h"
#include "fivew1h/io.h"
#include "fivew1h/response_parser.h"
#include "fivew1h/text_metrics.h"

namespace fivew1h {

class ReportError : public std::runtime_error {
 public:
  enum class Kind { kMissingGold, kDuplicateCell, kBadCsv, kBadReport };

  ReportError(Kind kind, const std::string& message,
              std::vector<std::string> ids = {})
      : std::runtime_error(message), kind_(kind), ids_(std::move(ids)) {}

  Kind kind() const { return kind_; }
  // Orphan article ids for kMissingGold.
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  Kind kind_;
  std::vector<std::string> ids_;
};

// An element is displayed when its valid count is strictly greater than the
// threshold. A fractional threshold is taken of the run's article count.
struct ValidThreshold {
  enum class Kind { kAbsolute, kFraction };
  Kind kind = Kind::kAbsolute;
  double value = 80;

  static ValidThreshold Absolute(std::size_t count);
  static ValidThreshold Fraction(double fraction);

  bool Displays(std::size_t valid_count, std::size_t article_count) const;
  // "absolute>80" or "fraction>0.8"; parsed back by FromRule.
  std::string Rule() const;
  static ValidThreshold FromRule(std::string_view rule);

  friend bool operator==(const ValidThreshold&, const ValidThreshold&) = default;
};

enum class InvalidPolicy {
  // Means over valid responses only.
  kExclude,
  // Invalid responses enter the mean with score 0.
  kScoreZero,
};

std::string_view InvalidPolicyName(InvalidPolicy policy);
std::optional<InvalidPolicy> ParseInvalidPolicy(std::string_view name);

// Per-article scores for all six elements; one line of scores.jsonl.
struct ArticleScores {
  std::string article_id;
  std::array<bool, kNumElements> valid{};
  std::array<MetricScores, kNumElements> scores{};

  Json ToJson() const;
  static ArticleScores FromJson(const Json& json);
};

// Scores every parsed response against its gold record. Invalid elements
// keep zero scores. Output follows gold order. Throws kMissingGold listing
// every parsed id without a gold record.
std::vector<ArticleScores> ScoreRun(std::span<const ParsedExtraction> parsed,
                                    std::span<const AnnotationRecord> gold,
                                    MatchMode mode = MatchMode::kConcat);

void WriteScores(const std::filesystem::path& path,
                 std::span<const ArticleScores> scores);
std::vector<ArticleScores> ReadScores(const std::filesystem::path& path);

struct ElementReport {
  ElementKind element = ElementKind::kWhat;
  std::size_t valid_count = 0;
  bool displayed = false;
  // Percent scale; ROUGE values are F1.
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  double bleu4 = 0.0;
};

struct EvalReport {
  std::string run_id;
  std::string model_id;
  DatasetId train_dataset = DatasetId::kCnnDm;
  DatasetId eval_dataset = DatasetId::kCnnDm;
  std::size_t article_count = 0;
  ValidThreshold threshold;
  InvalidPolicy invalid_policy = InvalidPolicy::kExclude;
  std::array<ElementReport, kNumElements> elements{};

  const ElementReport& operator[](ElementKind e) const { return elements[Index(e)]; }
};

struct ReportMeta {
  std::string run_id;
  std::string model_id;
  DatasetId train_dataset = DatasetId::kCnnDm;
  DatasetId eval_dataset = DatasetId::kCnnDm;
};

EvalReport AggregateScores(std::span<const ArticleScores> scores,
                           const ReportMeta& meta,
                           ValidThreshold threshold = {},
                           InvalidPolicy policy = InvalidPolicy::kExclude);

EvalReport Aggregate(std::span<const ParsedExtraction> parsed,
                     std::span<const AnnotationRecord> gold,
                     const ReportMeta& meta, ValidThreshold threshold = {},
                     InvalidPolicy policy = InvalidPolicy::kExclude,
                     MatchMode mode = MatchMode::kConcat);

// Recomputes displayed flags only; stored means are untouched.
void ApplyThreshold(EvalReport& report, ValidThreshold threshold);

enum class TableFormat { kMarkdown, kCsv };

// One row per report, four metric columns per element. Markdown prints
// non-displayed elements as U+2014; csv keeps the numbers and a displayed
// flag.
std::string RenderTable(std::span<const EvalReport> reports, TableFormat format);
std::string RenderTable(const EvalReport& report, TableFormat format);

// Reads RenderTable csv output. Numeric fields come back at two decimals.
std::vector<EvalReport> ParseReportCsv(std::string_view csv);

// model,what,when,where,why,who,how
std::string RenderValidCounts(std::span<const EvalReport> reports);

Json EvalReportToJson(const EvalReport& report);
EvalReport EvalReportFromJson(const Json& json);

struct TransferMatrix {
  std::vector<DatasetId> train_datasets;
  std::vector<DatasetId> eval_datasets;
  // Row-major over train x eval; -1 marks an empty cell.
  std::vector<int> cell_index;
  std::vector<EvalReport> reports;

  const EvalReport* Cell(DatasetId train, DatasetId eval) const;
  std::vector<std::pair<DatasetId, DatasetId>> EmptyCells() const;
};

// Throws kDuplicateCell when two reports share (train, eval).
TransferMatrix BuildTransferMatrix(std::span<const EvalReport> reports);

// "XSum(in-domain)" or "XSum(CNN fine-tune)".
std::string TransferRowLabel(const EvalReport& report);

std::string RenderTransferMarkdown(const TransferMatrix& matrix);
std::string RenderTransferCsv(const TransferMatrix& matrix);

}  // namespace fivew1h

#endif  // FIVEW1H_REPORT_H_
