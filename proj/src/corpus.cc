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

#include "fivew1h/corpus.h"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_set>

#include "fivew1h/text_util.h"

namespace fivew1h {
namespace {

using Kind = CorpusError::Kind;

[[noreturn]] void Malformed(std::size_t index, const std::string& why) {
  throw CorpusError(Kind::kMalformedRecord, index,
                    "record " + std::to_string(index) + ": " + why);
}

AnnotationRecord RecordFromJson(const Json& j, std::size_t index,
                                std::optional<DatasetId> expected) {
  if (!j.is_object()) Malformed(index, "not a JSON object");

  auto id_it = j.find("id");
  if (id_it == j.end() || !id_it->is_string() ||
      id_it->get_ref<const std::string&>().empty()) {
    Malformed(index, "\"id\" must be a non-empty string");
  }

  auto ds_it = j.find("dataset");
  if (ds_it == j.end() || !ds_it->is_string()) {
    Malformed(index, "\"dataset\" must be a string");
  }
  std::optional<DatasetId> dataset = ParseDatasetTag(ds_it->get<std::string>());
  if (!dataset) {
    Malformed(index, "unknown dataset \"" + ds_it->get<std::string>() + "\"");
  }
  if (expected && *dataset != *expected) {
    Malformed(index, "dataset \"" + std::string(DatasetTag(*dataset)) +
                         "\" does not match expected \"" +
                         std::string(DatasetTag(*expected)) + "\"");
  }

  auto cat_it = j.find("category");
  if (cat_it == j.end() || !cat_it->is_number_integer()) {
    Malformed(index, "\"category\" must be an integer code 1-6");
  }
  std::optional<NewsCategory> category =
      CategoryFromCode(cat_it->get<long long>());
  if (!category) {
    Malformed(index,
              "unknown category code " + std::to_string(cat_it->get<long long>()));
  }

  auto art_it = j.find("article");
  if (art_it == j.end() || !art_it->is_string() ||
      art_it->get_ref<const std::string&>().empty()) {
    Malformed(index, "\"article\" must be a non-empty string");
  }

  auto el_it = j.find("elements");
  if (el_it == j.end() || !el_it->is_object()) {
    Malformed(index, "\"elements\" must be an object");
  }
  ElementMap elements;
  std::array<bool, kNumElements> seen{};
  for (const auto& [key, value] : el_it->items()) {
    std::optional<ElementKind> kind = ParseElementName(key);
    if (!kind) {
      throw CorpusError(Kind::kUnknownElementKey, index,
                        "record " + std::to_string(index) +
                            ": unknown element key \"" + key + "\"");
    }
    if (seen[Index(*kind)]) {
      Malformed(index, "element \"" + std::string(ElementName(*kind)) +
                           "\" given more than once");
    }
    seen[Index(*kind)] = true;
    if (!value.is_array()) {
      Malformed(index, "element \"" + key + "\" must be an array of strings");
    }
    for (const Json& span : value) {
      if (!span.is_string()) {
        Malformed(index, "element \"" + key + "\" contains a non-string span");
      }
      elements[*kind].push_back(span.get<std::string>());
    }
  }

  return MakeRecord(id_it->get<std::string>(), *dataset, *category,
                    art_it->get<std::string>(), std::move(elements));
}

// Uniform draw in [0, bound) without modulo bias.
std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::size_t FloorCount(std::size_t n, double ratio) {
  // Absorbs representation error such as 0.1 * 1000 = 100.00000000000001 or
  // 0.29 * 100 = 28.999999999999996.
  return static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio + 1e-9));
}

std::vector<std::string> JsonIdList(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw IoError(std::string("split file: \"") + key + "\" must be an array");
  }
  std::vector<std::string> ids;
  for (const Json& v : *it) {
    if (!v.is_string()) {
      throw IoError(std::string("split file: \"") + key + "\" holds a non-string id");
    }
    ids.push_back(v.get<std::string>());
  }
  return ids;
}

}  // namespace

CorpusError::CorpusError(Kind kind, std::optional<std::size_t> record_index,
                         const std::string& message)
    : std::runtime_error(message), kind_(kind), record_index_(record_index) {}

AnnotationRecord MakeRecord(std::string id, DatasetId dataset,
                            NewsCategory category, std::string text,
                            ElementMap elements) {
  AnnotationRecord r;
  r.article.id = std::move(id);
  r.article.dataset = dataset;
  r.article.category = category;
  r.article.word_count = CountWords(text);
  r.article.text = std::move(text);
  r.elements = std::move(elements);
  return r;
}

std::vector<AnnotationRecord> ParseCorpus(std::string_view jsonl,
                                          std::optional<DatasetId> expected) {
  std::vector<AnnotationRecord> records;
  std::unordered_set<std::string> ids;
  for (const std::string& line : SplitLines(jsonl)) {
    if (Trim(line).empty()) continue;
    const std::size_t index = records.size();
    Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) Malformed(index, "invalid JSON");
    AnnotationRecord record = RecordFromJson(j, index, expected);
    if (!ids.insert(record.id()).second) {
      throw CorpusError(Kind::kDuplicateArticleId, index,
                        "record " + std::to_string(index) +
                            ": duplicate article id \"" + record.id() + "\"");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<AnnotationRecord> LoadCorpus(const std::filesystem::path& path,
                                         std::optional<DatasetId> expected) {
  return ParseCorpus(ReadFile(path), expected);
}

Json RecordToJson(const AnnotationRecord& record) {
  Json elements = Json::object();
  for (ElementKind e : kAllElements) {
    elements[std::string(ElementName(e))] = record.elements[e];
  }
  Json j;
  j["id"] = record.article.id;
  j["dataset"] = DatasetTag(record.article.dataset);
  j["category"] = CategoryCode(record.article.category);
  j["article"] = record.article.text;
  j["elements"] = std::move(elements);
  return j;
}

std::string SerializeCorpus(std::span<const AnnotationRecord> records) {
  std::string out;
  for (const AnnotationRecord& r : records) {
    out += DumpJson(RecordToJson(r));
    out.push_back('\n');
  }
  return out;
}

std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(BoundedDraw(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

SplitAssignment SplitDataset(std::span<const AnnotationRecord> records,
                             const SplitRatios& ratios, std::uint64_t seed,
                             std::span<const AnnotationRecord> merge_extra) {
  if (records.empty()) {
    throw CorpusError(Kind::kEmptyCorpus, std::nullopt, "cannot split an empty corpus");
  }
  for (double r : {ratios.train, ratios.validation, ratios.test}) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw CorpusError(Kind::kRatioSumInvalid, std::nullopt,
                        "split ratios must each lie in [0, 1]");
    }
  }
  if (std::fabs(ratios.train + ratios.validation + ratios.test - 1.0) > 1e-9) {
    throw CorpusError(Kind::kRatioSumInvalid, std::nullopt,
                      "split ratios must sum to 1");
  }

  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].article.dataset == DatasetId::kRaMds) {
      throw CorpusError(Kind::kUnsplittableDataset, i,
                        "RA-MDS records are never split; pass them as merge-extra");
    }
    if (!ids.insert(records[i].id()).second) {
      throw CorpusError(Kind::kDuplicateArticleId, i,
                        "duplicate article id \"" + records[i].id() + "\"");
    }
  }
  for (std::size_t i = 0; i < merge_extra.size(); ++i) {
    if (!ids.insert(merge_extra[i].id()).second) {
      throw CorpusError(Kind::kDuplicateArticleId, i,
                        "merge-extra id \"" + merge_extra[i].id() +
                            "\" already present");
    }
  }

  const std::size_t n = records.size();
  const std::size_t n_validation = FloorCount(n, ratios.validation);
  const std::size_t n_test = FloorCount(n, ratios.test);
  const std::size_t n_train = n - n_validation - n_test;

  std::vector<std::size_t> order = SeededPermutation(n, seed);
  SplitAssignment split;
  split.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& id = records[order[i]].id();
    if (i < n_train) {
      split.train.push_back(id);
    } else if (i < n_train + n_validation) {
      split.validation.push_back(id);
    } else {
      split.test.push_back(id);
    }
  }
  for (const AnnotationRecord& r : merge_extra) split.train.push_back(r.id());
  return split;
}

Json SplitToJson(const SplitAssignment& split) {
  Json j;
  j["seed"] = split.seed;
  j["train"] = split.train;
  j["validation"] = split.validation;
  j["test"] = split.test;
  return j;
}

SplitAssignment SplitFromJson(const Json& json) {
  if (!json.is_object()) throw IoError("split file: expected a JSON object");
  SplitAssignment split;
  auto seed = json.find("seed");
  if (seed == json.end() || !seed->is_number_unsigned()) {
    throw IoError("split file: \"seed\" must be a nonnegative integer");
  }
  split.seed = seed->get<std::uint64_t>();
  split.train = JsonIdList(json, "train");
  split.validation = JsonIdList(json, "validation");
  split.test = JsonIdList(json, "test");
  return split;
}

CorpusStats ComputeCorpusStats(std::span<const AnnotationRecord> records) {
  CorpusStats stats;
  stats.count = records.size();
  double words = 0.0;
  for (const AnnotationRecord& r : records) {
    words += static_cast<double>(r.article.word_count);
    for (ElementKind e : kAllElements) {
      const auto& spans = r.elements[e];
      if (!spans.empty()) ++stats.records_with_element[Index(e)];
      stats.spans_per_element[Index(e)] += spans.size();
      stats.total_spans += spans.size();
    }
    ++stats.per_category[CategoryCode(r.article.category) - 1];
  }
  if (!records.empty()) stats.mean_word_count = words / static_cast<double>(records.size());
  return stats;
}

Json StatsToJson(const CorpusStats& stats, std::optional<DatasetId> dataset) {
  Json j;
  if (dataset) j["dataset"] = DatasetTag(*dataset);
  j["records"] = stats.count;
  if (stats.mean_word_count) {
    j["mean_word_count"] = *stats.mean_word_count;
    j["mean_word_count_rounded"] = std::llround(*stats.mean_word_count);
  } else {
    j["mean_word_count"] = nullptr;
  }
  if (dataset) j["reference_mean_word_count"] = ReferenceAverageWords(*dataset);
  Json with = Json::object(), spans = Json::object();
  for (ElementKind e : kAllElements) {
    with[std::string(ElementName(e))] = stats.records_with_element[Index(e)];
    spans[std::string(ElementName(e))] = stats.spans_per_element[Index(e)];
  }
  j["records_with_element"] = std::move(with);
  j["spans_per_element"] = std::move(spans);
  j["total_spans"] = stats.total_spans;
  Json cats = Json::object();
  for (NewsCategory c : kAllCategories) {
    cats[std::to_string(CategoryCode(c))] = stats.per_category[CategoryCode(c) - 1];
  }
  j["per_category"] = std::move(cats);
  return j;
}

std::string FormatStats(const CorpusStats& stats,
                        std::optional<DatasetId> dataset) {
  std::ostringstream out;
  if (dataset) out << "dataset: " << DatasetDisplayName(*dataset) << "\n";
  out << "records: " << stats.count << "\n";
  out << "annotated spans: " << stats.total_spans << "\n";
  out << "mean words per article: ";
  if (stats.mean_word_count) {
    out << std::llround(*stats.mean_word_count);
  } else {
    out << "n/a";
  }
  if (dataset) out << " (reference: " << ReferenceAverageWords(*dataset) << ")";
  out << "\n";
  out << "records with >=1 span / total spans:\n";
  for (ElementKind e : kAllElements) {
    out << "  " << ElementTitle(e) << ": " << stats.records_with_element[Index(e)]
        << " / " << stats.spans_per_element[Index(e)] << "\n";
  }
  out << "categories:\n";
  for (NewsCategory c : kAllCategories) {
    out << "  (" << CategoryCode(c) << ") " << CategoryName(c) << ": "
        << stats.per_category[CategoryCode(c) - 1] << "\n";
  }
  return out.str();
}

}  // namespace fivew1h
