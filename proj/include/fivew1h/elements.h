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

// Core vocabulary shared by every module: the six 5W1H elements, the news
// categories, the source datasets and the per-element span map.

#ifndef FIVEW1H_ELEMENTS_H_
#define FIVEW1H_ELEMENTS_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fivew1h {

// Declaration order is the canonical order used for serialization and
// reporting.
enum class ElementKind { kWhat = 0, kWhen, kWhere, kWhy, kWho, kHow };

inline constexpr std::size_t kNumElements = 6;

inline constexpr std::array<ElementKind, kNumElements> kAllElements = {
    ElementKind::kWhat, ElementKind::kWhen, ElementKind::kWhere,
    ElementKind::kWhy,  ElementKind::kWho,  ElementKind::kHow};

constexpr std::size_t Index(ElementKind e) { return static_cast<std::size_t>(e); }

// "what", "when", ...
std::string_view ElementName(ElementKind e);
// "What", "When", ...
std::string_view ElementTitle(ElementKind e);
// Case-insensitive; surrounding ASCII whitespace is ignored.
std::optional<ElementKind> ParseElementName(std::string_view name);

enum class NewsCategory : int {
  kAccidentsNaturalDisasters = 1,
  kAttacks = 2,
  kNewTechnology = 3,
  kHealthSafety = 4,
  kEndangeredResources = 5,
  kInvestigationsTrials = 6,
};

inline constexpr std::array<NewsCategory, 6> kAllCategories = {
    NewsCategory::kAccidentsNaturalDisasters, NewsCategory::kAttacks,
    NewsCategory::kNewTechnology,             NewsCategory::kHealthSafety,
    NewsCategory::kEndangeredResources,       NewsCategory::kInvestigationsTrials};

std::optional<NewsCategory> CategoryFromCode(long long code);
constexpr int CategoryCode(NewsCategory c) { return static_cast<int>(c); }
std::string_view CategoryName(NewsCategory c);

enum class DatasetId { kCnnDm = 0, kXSum, kNyt, kRaMds };

inline constexpr std::array<DatasetId, 4> kAllDatasets = {
    DatasetId::kCnnDm, DatasetId::kXSum, DatasetId::kNyt, DatasetId::kRaMds};

// "cnndm", "xsum", "nyt", "ramds"
std::string_view DatasetTag(DatasetId d);
std::optional<DatasetId> ParseDatasetTag(std::string_view tag);
// "CNN/DailyMail", "XSum", "NYT", "RA-MDS"
std::string_view DatasetDisplayName(DatasetId d);
// Row-label form used in transfer tables: "CNN", "XSum", "NYT", "RA-MDS".
std::string_view DatasetShortName(DatasetId d);
// Average article length reported for the annotated corpora before formal
// annotation. Printed next to computed statistics for comparison.
int ReferenceAverageWords(DatasetId d);

// Ordered span lists for each of the six elements.
class ElementMap {
 public:
  using Spans = std::vector<std::string>;

  ElementMap() = default;

  Spans& operator[](ElementKind e) { return spans_[Index(e)]; }
  const Spans& operator[](ElementKind e) const { return spans_[Index(e)]; }

  bool AllEmpty() const;
  std::size_t TotalSpans() const;

  friend bool operator==(const ElementMap&, const ElementMap&) = default;

 private:
  std::array<Spans, kNumElements> spans_;
};

}  // namespace fivew1h

#endif  // FIVEW1H_ELEMENTS_H_
