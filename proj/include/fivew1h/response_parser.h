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

// Recovers a per-element answer map from free-form model output.
//
// Parsing tries, in order:
//   1. the whole text as one JSON object                    -> kStrictJson
//   2. an embedded JSON object: a ``` fenced block, the first brace-balanced
//      object, or a run of "key": <json value> pairs        -> kFencedJson
//   3. "Element: value" lines                               -> kKeyLineFallback
// and otherwise reports kUnparsed. Only objects carrying at least one element
// key count as a match. Keys are matched case-insensitively; scalar values
// become one-item lists; unknown keys are dropped with a warning. A
// comma-separated answer on one line stays one string.
//
// An element is valid when at least one answer is non-blank. Validity is the
// parser's own definition of a "valid response".

#ifndef FIVEW1H_RESPONSE_PARSER_H_
#define FIVEW1H_RESPONSE_PARSER_H_

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fivew1h/elements.h"
#include "fivew1h/gateway.h"
#include "fivew1h/io.h"

namespace fivew1h {

enum class ParseMode { kStrictJson, kFencedJson, kKeyLineFallback, kUnparsed };

std::string_view ParseModeName(ParseMode mode);

struct ParsedExtraction {
  std::string article_id;
  ElementMap elements;
  ParseMode mode = ParseMode::kUnparsed;
  std::array<bool, kNumElements> valid{};
  std::vector<std::string> warnings;

  bool is_valid(ElementKind e) const { return valid[Index(e)]; }

  Json ToJson() const;
  static ParsedExtraction FromJson(const Json& json);
};

// Never throws on any input bytes.
ParsedExtraction ParseResponseText(std::string_view article_id, std::string_view text);
ParsedExtraction ParseResponse(const RawResponse& raw);

using ValidityCounts = std::array<std::size_t, kNumElements>;
ValidityCounts ValiditySummary(std::span<const ParsedExtraction> parsed);

void WriteParsedRun(const std::filesystem::path& path,
                    std::span<const ParsedExtraction> parsed);
std::vector<ParsedExtraction> ReadParsedRun(const std::filesystem::path& path);

}  // namespace fivew1h

#endif  // FIVEW1H_RESPONSE_PARSER_H_
