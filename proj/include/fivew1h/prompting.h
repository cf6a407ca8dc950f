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

// Zero-shot and few-shot extraction prompts. The same renderer serves
// hosted models and fine-tuned endpoints, so prompts are byte-identical
// across them for the same inputs.
//
// Templates are plain text with the placeholders {instruction}, {format},
// {exemplars} and {article}. {instruction} and {article} must each appear
// exactly once. Substitution is a single pass, so placeholder-like text
// inside an article is left alone.

#ifndef FIVEW1H_PROMPTING_H_
#define FIVEW1H_PROMPTING_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fivew1h/corpus.h"
#include "fivew1h/sft.h"

namespace fivew1h {

inline constexpr std::string_view kDefaultFormatDirective =
    "Answer with a single JSON object whose keys are \"what\", \"when\", "
    "\"where\", \"why\", \"who\" and \"how\", in that order. Each value is a "
    "list of text fragments copied verbatim from the news; use an empty list "
    "when the news does not mention that element.";

inline constexpr std::string_view kDefaultPromptTemplate =
    "{instruction}\n{format}\n\n{exemplars}News:\n{article}\n\nAnswer:\n";

enum class PromptMode { kZeroShot, kFewShot };

struct PromptSpec {
  PromptMode mode = PromptMode::kZeroShot;
  std::size_t k = 5;
  std::string instruction{kDefaultInstruction};
  std::string format_directive{kDefaultFormatDirective};
  std::string template_text{kDefaultPromptTemplate};
  // Identifies where exemplars come from; recorded for provenance.
  std::string exemplar_split = "train";
  std::uint64_t seed = 0;
  std::size_t truncation_limit = kDefaultTruncationTokens;
  bool truncate_exemplars = true;
};

struct RenderedPrompt {
  std::string article_id;
  std::string text;
  std::vector<std::string> exemplar_ids;

  friend bool operator==(const RenderedPrompt&, const RenderedPrompt&) = default;
};

class PromptError : public std::runtime_error {
 public:
  enum class Kind { kInsufficientExemplars, kExemplarLeakage, kBadTemplate };
  PromptError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Indices into `train` of the first k records of its seeded shuffle.
std::vector<std::size_t> SelectExemplars(std::span<const AnnotationRecord> train,
                                         std::size_t k, std::uint64_t seed);

// Throws PromptError(kBadTemplate) unless the template is usable for `mode`.
void CheckTemplate(std::string_view template_text, PromptMode mode);

std::string LoadPromptTemplate(const std::filesystem::path& path);

// Exemplar gold outputs use SerializeElementMap, the same serializer as the
// SFT export. The target article is always TruncateArticle(text, limit).
RenderedPrompt BuildPrompt(const PromptSpec& spec, const NewsArticle& article,
                           std::span<const AnnotationRecord> train_records);

}  // namespace fivew1h

#endif  // FIVEW1H_PROMPTING_H_
