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

#include "fivew1h/prompting.h"

#include <array>
#include <map>
#include <optional>

namespace fivew1h {
namespace {

constexpr std::array<std::string_view, 4> kPlaceholders = {
    "instruction", "format", "exemplars", "article"};

// Placeholder name starting at template_text[pos] ('{'), if any.
std::optional<std::string_view> PlaceholderAt(std::string_view t, std::size_t pos) {
  for (std::string_view name : kPlaceholders) {
    if (t.size() - pos >= name.size() + 2 && t[pos + 1 + name.size()] == '}' &&
        t.substr(pos + 1, name.size()) == name) {
      return name;
    }
  }
  return std::nullopt;
}

std::map<std::string_view, int> CountPlaceholders(std::string_view t) {
  std::map<std::string_view, int> counts;
  for (std::size_t pos = t.find('{'); pos != std::string_view::npos;
       pos = t.find('{', pos + 1)) {
    if (auto name = PlaceholderAt(t, pos)) ++counts[*name];
  }
  return counts;
}

std::string Substitute(std::string_view t,
                       const std::map<std::string_view, std::string_view>& values) {
  std::string out;
  std::size_t i = 0;
  while (i < t.size()) {
    if (t[i] == '{') {
      if (auto name = PlaceholderAt(t, i)) {
        out += values.at(*name);
        i += name->size() + 2;
        continue;
      }
    }
    out.push_back(t[i++]);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> SelectExemplars(std::span<const AnnotationRecord> train,
                                         std::size_t k, std::uint64_t seed) {
  if (k == 0) {
    throw PromptError(PromptError::Kind::kInsufficientExemplars,
                      "few-shot prompting needs k >= 1");
  }
  if (train.size() < k) {
    throw PromptError(PromptError::Kind::kInsufficientExemplars,
                      "need " + std::to_string(k) + " exemplars but the training split has " +
                          std::to_string(train.size()));
  }
  std::vector<std::size_t> order = SeededPermutation(train.size(), seed);
  order.resize(k);
  return order;
}

void CheckTemplate(std::string_view template_text, PromptMode mode) {
  auto counts = CountPlaceholders(template_text);
  for (std::string_view required : {"instruction", "article"}) {
    if (counts[required] != 1) {
      throw PromptError(PromptError::Kind::kBadTemplate,
                        "template must contain {" + std::string(required) +
                            "} exactly once");
    }
  }
  if (mode == PromptMode::kFewShot && counts["exemplars"] != 1) {
    throw PromptError(PromptError::Kind::kBadTemplate,
                      "few-shot template must contain {exemplars} exactly once");
  }
}

std::string LoadPromptTemplate(const std::filesystem::path& path) {
  return ReadFile(path);
}

RenderedPrompt BuildPrompt(const PromptSpec& spec, const NewsArticle& article,
                           std::span<const AnnotationRecord> train_records) {
  CheckTemplate(spec.template_text, spec.mode);

  RenderedPrompt prompt;
  prompt.article_id = article.id;
  std::string exemplars;
  if (spec.mode == PromptMode::kFewShot) {
    for (std::size_t idx : SelectExemplars(train_records, spec.k, spec.seed)) {
      const AnnotationRecord& ex = train_records[idx];
      if (ex.id() == article.id) {
        throw PromptError(PromptError::Kind::kExemplarLeakage,
                          "article \"" + article.id + "\" was drawn as its own exemplar");
      }
      prompt.exemplar_ids.push_back(ex.id());
      std::string input = spec.truncate_exemplars
                              ? TruncateArticle(ex.article.text, spec.truncation_limit)
                              : ex.article.text;
      exemplars += "News:\n" + input + "\n\nAnswer:\n" +
                   SerializeElementMap(
                       SortSpansByDocumentOrder(ex.elements, ex.article.text)) +
                   "\n\n";
    }
  }

  const std::string target = TruncateArticle(article.text, spec.truncation_limit);
  prompt.text = Substitute(spec.template_text, {{"instruction", spec.instruction},
                                                {"format", spec.format_directive},
                                                {"exemplars", exemplars},
                                                {"article", target}});
  return prompt;
}

}  // namespace fivew1h
