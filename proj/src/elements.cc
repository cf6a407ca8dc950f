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

#include "fivew1h/elements.h"

#include <algorithm>
#include <cctype>

namespace fivew1h {
namespace {

constexpr std::array<std::string_view, kNumElements> kElementNames = {
    "what", "when", "where", "why", "who", "how"};
constexpr std::array<std::string_view, kNumElements> kElementTitles = {
    "What", "When", "Where", "Why", "Who", "How"};

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

std::string_view TrimAscii(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view ElementName(ElementKind e) { return kElementNames[Index(e)]; }

std::string_view ElementTitle(ElementKind e) { return kElementTitles[Index(e)]; }

std::optional<ElementKind> ParseElementName(std::string_view name) {
  name = TrimAscii(name);
  for (ElementKind e : kAllElements) {
    if (EqualsIgnoreCase(name, ElementName(e))) return e;
  }
  return std::nullopt;
}

std::optional<NewsCategory> CategoryFromCode(long long code) {
  if (code < 1 || code > 6) return std::nullopt;
  return static_cast<NewsCategory>(code);
}

std::string_view CategoryName(NewsCategory c) {
  switch (c) {
    case NewsCategory::kAccidentsNaturalDisasters:
      return "Accidents and Natural Disasters";
    case NewsCategory::kAttacks:
      return "Attacks (Criminal/Terrorist)";
    case NewsCategory::kNewTechnology:
      return "New Technology";
    case NewsCategory::kHealthSafety:
      return "Health and Safety";
    case NewsCategory::kEndangeredResources:
      return "Endangered Resources";
    case NewsCategory::kInvestigationsTrials:
      return "Investigations and Trials (Criminal/Legal/Other)";
  }
  return "unknown";
}

std::string_view DatasetTag(DatasetId d) {
  switch (d) {
    case DatasetId::kCnnDm: return "cnndm";
    case DatasetId::kXSum: return "xsum";
    case DatasetId::kNyt: return "nyt";
    case DatasetId::kRaMds: return "ramds";
  }
  return "unknown";
}

std::optional<DatasetId> ParseDatasetTag(std::string_view tag) {
  tag = TrimAscii(tag);
  for (DatasetId d : kAllDatasets) {
    if (EqualsIgnoreCase(tag, DatasetTag(d))) return d;
  }
  return std::nullopt;
}

std::string_view DatasetDisplayName(DatasetId d) {
  switch (d) {
    case DatasetId::kCnnDm: return "CNN/DailyMail";
    case DatasetId::kXSum: return "XSum";
    case DatasetId::kNyt: return "NYT";
    case DatasetId::kRaMds: return "RA-MDS";
  }
  return "unknown";
}

std::string_view DatasetShortName(DatasetId d) {
  switch (d) {
    case DatasetId::kCnnDm: return "CNN";
    case DatasetId::kXSum: return "XSum";
    case DatasetId::kNyt: return "NYT";
    case DatasetId::kRaMds: return "RA-MDS";
  }
  return "unknown";
}

int ReferenceAverageWords(DatasetId d) {
  switch (d) {
    case DatasetId::kCnnDm: return 579;
    case DatasetId::kXSum: return 523;
    case DatasetId::kNyt: return 552;
    case DatasetId::kRaMds: return 568;
  }
  return 0;
}

bool ElementMap::AllEmpty() const {
  return std::all_of(spans_.begin(), spans_.end(),
                     [](const Spans& s) { return s.empty(); });
}

std::size_t ElementMap::TotalSpans() const {
  std::size_t n = 0;
  for (const Spans& s : spans_) n += s.size();
  return n;
}

}  // namespace fivew1h
