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

// Machine-checkable annotation rules.
//
//  * verbatim:   every span occurs as a contiguous substring of the article
//                (exact match after NFC normalization, no case folding).
//  * uniqueness: no identical span string is listed under two elements.
//                Overlapping but distinct spans are fine.
//  * a span is never empty, and never repeated within one element.
//  * a record with no spans at all is flagged unless explicitly allowed.

#ifndef FIVEW1H_VALIDATOR_H_
#define FIVEW1H_VALIDATOR_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fivew1h/corpus.h"
#include "fivew1h/elements.h"

namespace fivew1h {

enum class IssueKind {
  kVerbatimViolation = 0,
  kUniquenessViolation,
  kEmptySpan,
  kDuplicateSpanWithinElement,
  kAllElementsEmpty,
};

inline constexpr std::array<IssueKind, 5> kAllIssueKinds = {
    IssueKind::kVerbatimViolation, IssueKind::kUniquenessViolation,
    IssueKind::kEmptySpan, IssueKind::kDuplicateSpanWithinElement,
    IssueKind::kAllElementsEmpty};

std::string_view IssueKindName(IssueKind kind);

enum class Severity { kError, kWarning };
// DuplicateSpanWithinElement is a warning; everything else is an error.
Severity SeverityOf(IssueKind kind);

struct ValidationIssue {
  std::string article_id;
  IssueKind kind;
  // Present for every kind except kAllElementsEmpty.
  std::optional<ElementKind> element;
  std::optional<std::string> span;
  std::string detail;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationPolicy {
  bool verbatim = true;
  bool uniqueness = true;
  bool allow_all_empty = false;
};

// Issues come out ordered by element (canonical order), then span index.
// kAllElementsEmpty, when raised, is the only issue.
std::vector<ValidationIssue> ValidateRecord(const AnnotationRecord& record,
                                            const ValidationPolicy& policy = {});

bool HasBlockingIssues(std::span<const ValidationIssue> issues);

struct ValidationReport {
  std::size_t records = 0;
  std::vector<ValidationIssue> issues;
  std::array<std::size_t, kAllIssueKinds.size()> count_by_kind{};
  // [kind][element]; kAllElementsEmpty is never counted here.
  std::array<std::array<std::size_t, kNumElements>, kAllIssueKinds.size()>
      count_by_kind_element{};
  std::size_t errors = 0;
  std::size_t warnings = 0;
  // True iff no error-severity issue was found. Warnings do not fail.
  bool pass = true;
};

ValidationReport ValidateCorpus(std::span<const AnnotationRecord> records,
                                const ValidationPolicy& policy = {});

Json ReportToJson(const ValidationReport& report);
std::string FormatReport(const ValidationReport& report);

}  // namespace fivew1h

#endif  // FIVEW1H_VALIDATOR_H_
