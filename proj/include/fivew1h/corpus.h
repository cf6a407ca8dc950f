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

// Annotated news corpora: loading, train/validation/test splitting and
// summary statistics.
//
// Corpus files are UTF-8 JSON Lines, one record per line:
//
//   {"id": "...", "dataset": "cnndm", "category": 1, "article": "...",
//    "elements": {"what": [...], "when": [...], ..., "how": [...]}}

#ifndef FIVEW1H_CORPUS_H_
#define FIVEW1H_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fivew1h/elements.h"
#include "fivew1h/io.h"

namespace fivew1h {

struct NewsArticle {
  std::string id;
  DatasetId dataset = DatasetId::kCnnDm;
  NewsCategory category = NewsCategory::kAccidentsNaturalDisasters;
  std::string text;
  std::size_t word_count = 0;

  friend bool operator==(const NewsArticle&, const NewsArticle&) = default;
};

struct AnnotationRecord {
  NewsArticle article;
  ElementMap elements;

  const std::string& id() const { return article.id; }

  friend bool operator==(const AnnotationRecord&,
                         const AnnotationRecord&) = default;
};

// Builds a record and fills in word_count from the text.
AnnotationRecord MakeRecord(std::string id, DatasetId dataset,
                            NewsCategory category, std::string text,
                            ElementMap elements);

class CorpusError : public std::runtime_error {
 public:
  enum class Kind {
    kMalformedRecord,
    kUnknownElementKey,
    kDuplicateArticleId,
    kEmptyCorpus,
    kRatioSumInvalid,
    kUnsplittableDataset,
  };

  CorpusError(Kind kind, std::optional<std::size_t> record_index,
              const std::string& message);

  Kind kind() const { return kind_; }
  // Zero-based index of the offending record, when there is one.
  std::optional<std::size_t> record_index() const { return record_index_; }

 private:
  Kind kind_;
  std::optional<std::size_t> record_index_;
};

// When `expected` is set, every record's dataset must match it. Blank lines
// are skipped; records keep file order.
std::vector<AnnotationRecord> ParseCorpus(
    std::string_view jsonl, std::optional<DatasetId> expected = std::nullopt);
std::vector<AnnotationRecord> LoadCorpus(
    const std::filesystem::path& path,
    std::optional<DatasetId> expected = std::nullopt);

Json RecordToJson(const AnnotationRecord& record);
std::string SerializeCorpus(std::span<const AnnotationRecord> records);

struct SplitRatios {
  double train = 0.8;
  double validation = 0.1;
  double test = 0.1;
};

struct SplitAssignment {
  std::uint64_t seed = 0;
  std::vector<std::string> train;
  std::vector<std::string> validation;
  std::vector<std::string> test;

  friend bool operator==(const SplitAssignment&,
                         const SplitAssignment&) = default;
};

// Fisher-Yates permutation of [0, n) driven by mt19937_64. Identical across
// platforms and standard libraries for the same (n, seed).
std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed);

// Shuffles `records` under `seed` and cuts validation and test sizes as
// floor(n * ratio); the remainder goes to train. `merge_extra` ids (RA-MDS)
// are appended to train in their given order and never split.
SplitAssignment SplitDataset(std::span<const AnnotationRecord> records,
                             const SplitRatios& ratios, std::uint64_t seed,
                             std::span<const AnnotationRecord> merge_extra = {});

Json SplitToJson(const SplitAssignment& split);
SplitAssignment SplitFromJson(const Json& json);

struct CorpusStats {
  std::size_t count = 0;
  std::optional<double> mean_word_count;
  // Records with at least one span for the element.
  std::array<std::size_t, kNumElements> records_with_element{};
  // Total spans per element; reported alongside the record counts since
  // "entries" can mean either.
  std::array<std::size_t, kNumElements> spans_per_element{};
  std::size_t total_spans = 0;
  // Indexed by category code - 1.
  std::array<std::size_t, 6> per_category{};
};

CorpusStats ComputeCorpusStats(std::span<const AnnotationRecord> records);
Json StatsToJson(const CorpusStats& stats, std::optional<DatasetId> dataset);
std::string FormatStats(const CorpusStats& stats,
                        std::optional<DatasetId> dataset);

}  // namespace fivew1h

#endif  // FIVEW1H_CORPUS_H_
