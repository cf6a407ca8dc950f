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

#include "fivew1h/validator.h"

#include <map>
#include <set>
#include <sstream>

#include "fivew1h/text_util.h"

namespace fivew1h {

std::string_view IssueKindName(IssueKind kind) {
  switch (kind) {
    case IssueKind::kVerbatimViolation: return "VerbatimViolation";
    case IssueKind::kUniquenessViolation: return "UniquenessViolation";
    case IssueKind::kEmptySpan: return "EmptySpan";
    case IssueKind::kDuplicateSpanWithinElement: return "DuplicateSpanWithinElement";
    case IssueKind::kAllElementsEmpty: return "AllElementsEmpty";
  }
  return "Unknown";
}

Severity SeverityOf(IssueKind kind) {
  return kind == IssueKind::kDuplicateSpanWithinElement ? Severity::kWarning
                                                        : Severity::kError;
}

std::vector<ValidationIssue> ValidateRecord(const AnnotationRecord& record,
                                            const ValidationPolicy& policy) {
  std::vector<ValidationIssue> issues;
  const std::string& id = record.id();

  if (record.elements.AllEmpty()) {
    if (!policy.allow_all_empty) {
      issues.push_back({id, IssueKind::kAllElementsEmpty, std::nullopt,
                        std::nullopt, "no element has any span"});
    }
    return issues;
  }

  const std::string text = policy.verbatim ? NormalizeNfc(record.article.text)
                                           : std::string();
  // Span -> first element listing it, for the uniqueness rule.
  std::map<std::string, ElementKind> owner;

  for (ElementKind e : kAllElements) {
    std::set<std::string> seen_here;
    for (const std::string& span : record.elements[e]) {
      auto issue = [&](IssueKind kind, std::string detail) {
        issues.push_back({id, kind, e, span, std::move(detail)});
      };
      if (Trim(span).empty()) {
        issue(IssueKind::kEmptySpan, "empty span");
        continue;
      }
      if (!seen_here.insert(span).second) {
        issue(IssueKind::kDuplicateSpanWithinElement,
              "span repeated within \"" + std::string(ElementName(e)) + "\"");
        continue;
      }
      if (policy.verbatim && text.find(NormalizeNfc(span)) == std::string::npos) {
        issue(IssueKind::kVerbatimViolation, "span does not occur in the article");
      }
      if (policy.uniqueness) {
        auto [it, inserted] = owner.emplace(span, e);
        if (!inserted && it->second != e) {
          issue(IssueKind::kUniquenessViolation,
                "span also listed under \"" +
                    std::string(ElementName(it->second)) + "\"");
        }
      }
    }
  }
  return issues;
}

bool HasBlockingIssues(std::span<const ValidationIssue> issues) {
  for (const ValidationIssue& i : issues) {
    if (SeverityOf(i.kind) == Severity::kError) return true;
  }
  return false;
}

ValidationReport ValidateCorpus(std::span<const AnnotationRecord> records,
                                const ValidationPolicy& policy) {
  ValidationReport report;
  report.records = records.size();
  for (const AnnotationRecord& r : records) {
    for (ValidationIssue& issue : ValidateRecord(r, policy)) {
      const auto k = static_cast<std::size_t>(issue.kind);
      ++report.count_by_kind[k];
      if (issue.element) ++report.count_by_kind_element[k][Index(*issue.element)];
      if (SeverityOf(issue.kind) == Severity::kError) {
        ++report.errors;
      } else {
        ++report.warnings;
      }
      report.issues.push_back(std::move(issue));
    }
  }
  report.pass = report.errors == 0;
  return report;
}

Json ReportToJson(const ValidationReport& report) {
  Json j;
  j["pass"] = report.pass;
  j["records"] = report.records;
  j["errors"] = report.errors;
  j["warnings"] = report.warnings;
  Json by_kind = Json::object();
  Json by_kind_element = Json::object();
  for (IssueKind kind : kAllIssueKinds) {
    const auto k = static_cast<std::size_t>(kind);
    by_kind[std::string(IssueKindName(kind))] = report.count_by_kind[k];
    if (kind == IssueKind::kAllElementsEmpty) continue;
    Json per = Json::object();
    for (ElementKind e : kAllElements) {
      per[std::string(ElementName(e))] = report.count_by_kind_element[k][Index(e)];
    }
    by_kind_element[std::string(IssueKindName(kind))] = std::move(per);
  }
  j["count_by_kind"] = std::move(by_kind);
  j["count_by_kind_element"] = std::move(by_kind_element);
  Json issues = Json::array();
  for (const ValidationIssue& i : report.issues) {
    Json ij;
    ij["article_id"] = i.article_id;
    ij["kind"] = IssueKindName(i.kind);
    ij["severity"] = SeverityOf(i.kind) == Severity::kError ? "error" : "warning";
    if (i.element) ij["element"] = ElementName(*i.element);
    if (i.span) ij["span"] = *i.span;
    ij["detail"] = i.detail;
    issues.push_back(std::move(ij));
  }
  j["issues"] = std::move(issues);
  return j;
}

std::string FormatReport(const ValidationReport& report) {
  std::ostringstream out;
  out << (report.pass ? "PASS" : "FAIL") << ": " << report.records
      << " records, " << report.errors << " errors, " << report.warnings
      << " warnings\n";
  for (IssueKind kind : kAllIssueKinds) {
    std::size_t n = report.count_by_kind[static_cast<std::size_t>(kind)];
    if (n) out << "  " << IssueKindName(kind) << ": " << n << "\n";
  }
  for (const ValidationIssue& i : report.issues) {
    out << i.article_id << "\t" << IssueKindName(i.kind);
    if (i.element) out << "\t" << ElementName(*i.element);
    if (i.span) out << "\t\"" << *i.span << "\"";
    out << "\t" << i.detail << "\n";
  }
  return out.str();
}

}  // namespace fivew1h
