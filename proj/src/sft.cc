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

#include "fivew1h/sft.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fivew1h/text_util.h"
#include "fivew1h/validator.h"

namespace fivew1h {
namespace {

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  for (std::string_view w : SplitWhitespace(s)) {
    if (!out.empty()) out.push_back(' ');
    out.append(w);
  }
  return out;
}

bool AllSpansContained(const ElementMap& elements, std::string_view input) {
  for (ElementKind e : kAllElements) {
    for (const std::string& span : elements[e]) {
      if (input.find(CollapseWhitespace(span)) == std::string_view::npos) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> WhitespaceTokenizer::Tokenize(std::string_view text) const {
  std::vector<std::string> tokens;
  for (std::string_view w : SplitWhitespace(text)) tokens.emplace_back(w);
  return tokens;
}

std::string WhitespaceTokenizer::Detokenize(std::span<const std::string> tokens) const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::size_t WhitespaceTokenizer::Count(std::string_view text) const {
  return CountWords(text);
}

const Tokenizer& DefaultTokenizer() {
  static const WhitespaceTokenizer tokenizer;
  return tokenizer;
}

std::string TruncateArticle(std::string_view text, std::size_t limit,
                            const Tokenizer& tokenizer) {
  if (limit == 0) throw std::invalid_argument("truncation limit must be >= 1");
  std::vector<std::string> tokens = tokenizer.Tokenize(text);
  if (tokens.size() > limit) tokens.resize(limit);
  return tokenizer.Detokenize(tokens);
}

std::string SerializeElementMap(const ElementMap& elements) {
  std::string out = "{";
  for (ElementKind e : kAllElements) {
    if (e != ElementKind::kWhat) out += ", ";
    out += DumpJson(Json(ElementName(e)));
    out += ": [";
    const auto& spans = elements[e];
    for (std::size_t i = 0; i < spans.size(); ++i) {
      if (i) out += ", ";
      out += DumpJson(Json(spans[i]));
    }
    out += "]";
  }
  out += "}";
  return out;
}

ElementMap ParseElementMap(std::string_view serialized) {
  Json j = Json::parse(serialized, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw std::invalid_argument("element map is not a JSON object");
  }
  if (j.size() != kNumElements) {
    throw std::invalid_argument("element map must have exactly six keys");
  }
  ElementMap elements;
  std::size_t position = 0;
  for (const auto& [key, value] : j.items()) {
    ElementKind expected = kAllElements[position++];
    if (key != ElementName(expected)) {
      throw std::invalid_argument("expected key \"" +
                                  std::string(ElementName(expected)) +
                                  "\", found \"" + key + "\"");
    }
    if (!value.is_array()) {
      throw std::invalid_argument("\"" + key + "\" must be an array");
    }
    for (const Json& span : value) {
      if (!span.is_string()) {
        throw std::invalid_argument("\"" + key + "\" holds a non-string span");
      }
      elements[expected].push_back(span.get<std::string>());
    }
  }
  return elements;
}

ElementMap SortSpansByDocumentOrder(const ElementMap& elements,
                                    std::string_view text) {
  ElementMap sorted;
  for (ElementKind e : kAllElements) {
    const auto& spans = elements[e];
    std::vector<std::size_t> positions(spans.size());
    for (std::size_t i = 0; i < spans.size(); ++i) positions[i] = text.find(spans[i]);
    std::vector<std::size_t> order(spans.size());
    std::iota(order.begin(), order.end(), 0);
    // npos sorts last; ties keep annotation order.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return positions[a] < positions[b];
    });
    for (std::size_t i : order) sorted[e].push_back(spans[i]);
  }
  return sorted;
}

SftRecord ToSftRecord(const AnnotationRecord& record, std::string_view instruction,
                      std::size_t limit, const Tokenizer& tokenizer) {
  std::vector<ValidationIssue> issues = ValidateRecord(record);
  if (HasBlockingIssues(issues)) {
    const ValidationIssue& first = *std::find_if(
        issues.begin(), issues.end(),
        [](const ValidationIssue& i) { return SeverityOf(i.kind) == Severity::kError; });
    throw SftError(SftError::Kind::kValidationRequired,
                   "record \"" + record.id() + "\" fails validation (" +
                       std::string(IssueKindName(first.kind)) + ")");
  }
  SftRecord sft;
  sft.instruction = std::string(instruction);
  sft.input = TruncateArticle(record.article.text, limit, tokenizer);
  sft.output = SerializeElementMap(
      SortSpansByDocumentOrder(record.elements, record.article.text));
  return sft;
}

Json SftToJson(const SftRecord& record) {
  Json j;
  j["instruction"] = record.instruction;
  j["input"] = record.input;
  j["output"] = record.output;
  return j;
}

SftRecord SftFromJson(const Json& json) {
  if (!json.is_object()) throw std::invalid_argument("not a JSON object");
  SftRecord r;
  for (auto [key, field] : {std::pair{"instruction", &r.instruction},
                            std::pair{"input", &r.input},
                            std::pair{"output", &r.output}}) {
    auto it = json.find(key);
    if (it == json.end() || !it->is_string()) {
      throw std::invalid_argument(std::string("\"") + key + "\" must be a string");
    }
    *field = it->get<std::string>();
  }
  ParseElementMap(r.output);
  return r;
}

SftExportResult ExportSft(std::span<const AnnotationRecord> records,
                          const std::filesystem::path& path,
                          const SftExportOptions& options,
                          const Tokenizer& tokenizer) {
  // Convert everything first so a validation failure leaves no partial file.
  std::vector<SftRecord> converted;
  converted.reserve(records.size());
  for (const AnnotationRecord& r : records) {
    converted.push_back(
        ToSftRecord(r, options.instruction, options.truncation_limit, tokenizer));
  }

  SftExportResult result;
  std::string content;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SftRecord& sft = converted[i];
    const std::string& id = records[i].id();
    const std::size_t output_tokens = tokenizer.Count(sft.output);
    if (output_tokens > options.max_output_tokens) {
      result.over_output_budget.push_back(id);
    }
    if (!AllSpansContained(records[i].elements, sft.input)) {
      result.severed_spans.push_back(id);
    }
    if (options.source_max_len &&
        tokenizer.Count(sft.instruction) + tokenizer.Count(sft.input) >
            *options.source_max_len) {
      result.over_source_max_len.push_back(id);
    }
    if (options.target_max_len && output_tokens > *options.target_max_len) {
      result.over_target_max_len.push_back(id);
    }
    content += DumpJson(SftToJson(sft));
    content.push_back('\n');
  }
  WriteFile(path, content);
  result.written = converted.size();
  return result;
}

std::vector<SftRecord> ImportSft(const std::filesystem::path& path) {
  std::vector<SftRecord> records;
  std::vector<std::string> lines = SplitLines(ReadFile(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    Json j = Json::parse(lines[i], nullptr, /*allow_exceptions=*/false);
    try {
      if (j.is_discarded()) throw std::invalid_argument("invalid JSON");
      records.push_back(SftFromJson(j));
    } catch (const std::invalid_argument& e) {
      throw SftError(SftError::Kind::kSchemaMismatch,
                     path.string() + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return records;
}

Json ExportResultToJson(const SftExportResult& result) {
  Json j;
  j["written"] = result.written;
  j["over_output_budget"] = result.over_output_budget;
  j["severed_spans"] = result.severed_spans;
  j["over_source_max_len"] = result.over_source_max_len;
  j["over_target_max_len"] = result.over_target_max_len;
  return j;
}

}  // namespace fivew1h
