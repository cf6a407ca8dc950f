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

// Supervised fine-tuning records: (instruction, truncated article, canonical
// element-map serialization). SFT files are JSON Lines of
//
//   {"instruction": "...", "input": "...", "output": "{\"what\": [...], ...}"}

#ifndef FIVEW1H_SFT_H_
#define FIVEW1H_SFT_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fivew1h/corpus.h"
#include "fivew1h/elements.h"

namespace fivew1h {

inline constexpr std::string_view kDefaultInstruction =
    "Please extract What, When, Where, Why, Who, and How from the news.";
inline constexpr std::size_t kDefaultTruncationTokens = 750;
inline constexpr std::size_t kDefaultMaxOutputTokens = 1024;

// Token boundary used for truncation and budget checks. Model-specific
// tokenizers plug in here.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::vector<std::string> Tokenize(std::string_view text) const = 0;
  virtual std::string Detokenize(std::span<const std::string> tokens) const = 0;
  virtual std::size_t Count(std::string_view text) const {
    return Tokenize(text).size();
  }
};

// Whitespace words, rejoined with single spaces.
class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::vector<std::string> Tokenize(std::string_view text) const override;
  std::string Detokenize(std::span<const std::string> tokens) const override;
  std::size_t Count(std::string_view text) const override;
};

const Tokenizer& DefaultTokenizer();

// First `limit` tokens, detokenized. Throws std::invalid_argument when
// limit == 0.
std::string TruncateArticle(std::string_view text,
                            std::size_t limit = kDefaultTruncationTokens,
                            const Tokenizer& tokenizer = DefaultTokenizer());

// Canonical form: {"what": ["a", "b"], "when": [], ..., "how": []}
// Keys always in canonical order; one space after ':' and ','.
std::string SerializeElementMap(const ElementMap& elements);
// Strict inverse of SerializeElementMap: a JSON object with exactly the six
// canonical keys, each an array of strings. Throws std::invalid_argument.
ElementMap ParseElementMap(std::string_view serialized);

// Orders each element's spans by first occurrence in `text`; spans that do
// not occur keep their relative order after the located ones.
ElementMap SortSpansByDocumentOrder(const ElementMap& elements,
                                    std::string_view text);

struct SftRecord {
  std::string instruction;
  std::string input;
  std::string output;

  friend bool operator==(const SftRecord&, const SftRecord&) = default;
};

class SftError : public std::runtime_error {
 public:
  enum class Kind { kValidationRequired, kSchemaMismatch };
  SftError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Throws SftError(kValidationRequired) when the record has error-severity
// validation issues under the default policy.
SftRecord ToSftRecord(const AnnotationRecord& record,
                      std::string_view instruction = kDefaultInstruction,
                      std::size_t limit = kDefaultTruncationTokens,
                      const Tokenizer& tokenizer = DefaultTokenizer());

struct SftExportOptions {
  std::string instruction{kDefaultInstruction};
  std::size_t truncation_limit = kDefaultTruncationTokens;
  // Advisory generation budget; over-long outputs are written and reported.
  std::size_t max_output_tokens = kDefaultMaxOutputTokens;
  // Training-side length limits. No defaults; when set, longer records are
  // reported.
  std::optional<std::size_t> source_max_len;
  std::optional<std::size_t> target_max_len;
};

struct SftExportResult {
  std::size_t written = 0;
  std::vector<std::string> over_output_budget;
  // Records whose truncated input no longer contains every gold span.
  std::vector<std::string> severed_spans;
  std::vector<std::string> over_source_max_len;
  std::vector<std::string> over_target_max_len;
};

Json SftToJson(const SftRecord& record);
SftRecord SftFromJson(const Json& json);

SftExportResult ExportSft(std::span<const AnnotationRecord> records,
                          const std::filesystem::path& path,
                          const SftExportOptions& options = {},
                          const Tokenizer& tokenizer = DefaultTokenizer());

// Throws SftError(kSchemaMismatch) naming the 1-based line on bad input.
std::vector<SftRecord> ImportSft(const std::filesystem::path& path);

Json ExportResultToJson(const SftExportResult& result);

}  // namespace fivew1h

#endif  // FIVEW1H_SFT_H_
