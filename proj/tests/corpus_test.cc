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

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "test_support.h"

namespace fivew1h {
namespace {

using testing::SyntheticCorpus;

std::string Line(const std::string& elements, const std::string& extra = "") {
  return R"({"id": "a1", "dataset": "cnndm", "category": 2, "article": "One two three four",)" +
         extra + R"( "elements": )" + elements + "}\n";
}

CorpusError::Kind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const CorpusError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no CorpusError thrown";
  return CorpusError::Kind::kMalformedRecord;
}

TEST(CorpusTest, LoadsOneRecordWithAllKeys) {
  auto records = ParseCorpus(Line(
      R"({"what": ["One"], "when": [], "where": [], "why": [], "who": ["two"], "how": []})"));
  ASSERT_EQ(records.size(), 1u);
  const AnnotationRecord& r = records[0];
  EXPECT_EQ(r.id(), "a1");
  EXPECT_EQ(r.article.dataset, DatasetId::kCnnDm);
  EXPECT_EQ(r.article.category, NewsCategory::kAttacks);
  EXPECT_EQ(r.article.word_count, 4u);
  EXPECT_EQ(r.elements[ElementKind::kWhat], std::vector<std::string>{"One"});
  EXPECT_EQ(r.elements[ElementKind::kWho], std::vector<std::string>{"two"});
}

TEST(CorpusTest, MissingKeyBecomesEmptyList) {
  auto records = ParseCorpus(
      Line(R"({"what": ["One"], "when": [], "where": [], "why": [], "who": []})"));
  ASSERT_EQ(records.size(), 1u);
  EXPECT_TRUE(records[0].elements[ElementKind::kHow].empty());
}

TEST(CorpusTest, KeyCasingIsNormalized) {
  // Random casings of every key load to the same map.
  std::mt19937_64 rng(11);
  const auto baseline = ParseCorpus(Line(
      R"({"what": ["One"], "when": ["two"], "where": [], "why": [], "who": [], "how": ["four"]})"));
  for (int trial = 0; trial < 200; ++trial) {
    std::string json = "{";
    const char* values[] = {R"(["One"])", R"(["two"])", "[]", "[]", "[]", R"(["four"])"};
    for (std::size_t i = 0; i < kAllElements.size(); ++i) {
      std::string key(ElementName(kAllElements[i]));
      for (char& c : key) {
        if (rng() & 1) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
      if (i) json += ", ";
      json += "\"" + key + "\": " + values[i];
    }
    json += "}";
    auto records = ParseCorpus(Line(json));
    ASSERT_EQ(records[0].elements, baseline[0].elements) << json;
  }
}

TEST(CorpusTest, Errors) {
  EXPECT_EQ(KindOf([] { ParseCorpus(Line(R"({"whom": []})")); }),
            CorpusError::Kind::kUnknownElementKey);
  EXPECT_EQ(KindOf([] { ParseCorpus(Line(R"({"what": [], "WHAT": []})")); }),
            CorpusError::Kind::kMalformedRecord);
  EXPECT_EQ(KindOf([] { ParseCorpus(Line(R"({"what": "x"})")); }),
            CorpusError::Kind::kMalformedRecord);
  EXPECT_EQ(KindOf([] { ParseCorpus("{not json\n"); }), CorpusError::Kind::kMalformedRecord);
  EXPECT_EQ(KindOf([] {
              ParseCorpus(R"({"id": "a", "dataset": "cnndm", "category": 9, "article": "x", "elements": {}})");
            }),
            CorpusError::Kind::kMalformedRecord);
  EXPECT_EQ(KindOf([] { ParseCorpus(Line("{}") + Line("{}")); }),
            CorpusError::Kind::kDuplicateArticleId);
  EXPECT_EQ(KindOf([] { ParseCorpus(Line("{}"), DatasetId::kXSum); }),
            CorpusError::Kind::kMalformedRecord);
}

TEST(CorpusTest, ErrorCarriesRecordIndex) {
  try {
    ParseCorpus(Line("{}") + "\n" + R"({"id": "b"})" + "\n");
    FAIL();
  } catch (const CorpusError& e) {
    EXPECT_EQ(e.record_index(), 1u);
  }
}

TEST(CorpusTest, SerializeRoundTrip) {
  auto records = SyntheticCorpus(25);
  records[3].elements[ElementKind::kWhy].clear();
  records[4].article.text = "Caf\xC3\xA9 \"quoted\" text\twith tab";
  records[4].article.word_count = 5;
  const std::string text = SerializeCorpus(records);
  EXPECT_EQ(ParseCorpus(text), records);
  EXPECT_EQ(SerializeCorpus(ParseCorpus(text)), text);
}

TEST(CorpusTest, BundledFixtureLoads) {
  auto records = LoadCorpus(testing::FixturePath("cnndm_100.jsonl"), DatasetId::kCnnDm);
  EXPECT_EQ(records.size(), 100u);
  std::set<std::string> ids;
  for (const auto& r : records) ids.insert(r.id());
  EXPECT_EQ(ids.size(), 100u);
}

TEST(SplitTest, ThousandRecordsSplitEightOneOne) {
  auto records = SyntheticCorpus(1000);
  SplitAssignment s = SplitDataset(records, {}, 7);
  EXPECT_EQ(s.train.size(), 800u);
  EXPECT_EQ(s.validation.size(), 100u);
  EXPECT_EQ(s.test.size(), 100u);
  EXPECT_EQ(s.seed, 7u);
}

TEST(SplitTest, MergeExtraGoesToTrainOnly) {
  auto records = SyntheticCorpus(1000);
  auto extra = SyntheticCorpus(450, DatasetId::kRaMds);
  SplitAssignment s = SplitDataset(records, {}, 7, extra);
  EXPECT_EQ(s.train.size(), 1250u);
  EXPECT_EQ(s.validation.size(), 100u);
  EXPECT_EQ(s.test.size(), 100u);
  std::set<std::string> train(s.train.begin(), s.train.end());
  for (const auto& r : extra) EXPECT_TRUE(train.count(r.id()));
}

TEST(SplitTest, DegenerateRatio) {
  SplitAssignment s = SplitDataset(SyntheticCorpus(10), {1.0, 0.0, 0.0}, 3);
  EXPECT_EQ(s.train.size(), 10u);
  EXPECT_TRUE(s.validation.empty());
  EXPECT_TRUE(s.test.empty());
}

TEST(SplitTest, Errors) {
  EXPECT_EQ(KindOf([] { SplitDataset({}, {}, 1); }), CorpusError::Kind::kEmptyCorpus);
  EXPECT_EQ(KindOf([] { SplitDataset(SyntheticCorpus(5), {0.5, 0.5, 0.5}, 1); }),
            CorpusError::Kind::kRatioSumInvalid);
  EXPECT_EQ(KindOf([] { SplitDataset(SyntheticCorpus(5), {1.2, -0.1, -0.1}, 1); }),
            CorpusError::Kind::kRatioSumInvalid);
  EXPECT_EQ(KindOf([] { SplitDataset(SyntheticCorpus(5, DatasetId::kRaMds), {}, 1); }),
            CorpusError::Kind::kUnsplittableDataset);
  EXPECT_EQ(KindOf([] {
              auto a = SyntheticCorpus(5);
              SplitDataset(a, {}, 1, a);
            }),
            CorpusError::Kind::kDuplicateArticleId);
}

// Property: the three parts partition the input ids; sizes follow the floor
// rule; same seed gives the same assignment.
TEST(SplitTest, PartitionPropertyOverRandomSizes) {
  std::mt19937_64 rng(2024);
  std::vector<std::size_t> sizes;
  for (std::size_t n = 1; n <= 60; ++n) sizes.push_back(n);
  std::uniform_int_distribution<std::size_t> pick(61, 2000);
  for (int i = 0; i < 60; ++i) sizes.push_back(pick(rng));
  sizes.push_back(2000);
  for (std::size_t n : sizes) {
    auto records = SyntheticCorpus(n);
    const std::uint64_t seed = rng();
    SplitAssignment a = SplitDataset(records, {}, seed);
    SplitAssignment b = SplitDataset(records, {}, seed);
    ASSERT_EQ(a, b) << n;
    ASSERT_EQ(DumpJson(SplitToJson(a)), DumpJson(SplitToJson(b)));
    std::set<std::string> all;
    for (const auto* part : {&a.train, &a.validation, &a.test}) {
      for (const auto& id : *part) ASSERT_TRUE(all.insert(id).second) << "overlap at n=" << n;
    }
    ASSERT_EQ(all.size(), n);
    for (const auto& r : records) ASSERT_TRUE(all.count(r.id()));
    ASSERT_EQ(a.validation.size(), n / 10) << n;
    ASSERT_EQ(a.test.size(), n / 10) << n;
  }
}

TEST(SplitTest, DifferentSeedsShuffleDifferently) {
  auto records = SyntheticCorpus(100);
  EXPECT_NE(SplitDataset(records, {}, 1).test, SplitDataset(records, {}, 2).test);
}

TEST(SplitTest, JsonRoundTrip) {
  SplitAssignment s = SplitDataset(SyntheticCorpus(30), {}, 9);
  EXPECT_EQ(SplitFromJson(SplitToJson(s)), s);
}

TEST(SplitTest, PermutationIsAPermutation) {
  for (std::size_t n : {0u, 1u, 2u, 17u, 500u}) {
    auto p = SeededPermutation(n, 5);
    std::sort(p.begin(), p.end());
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(p[i], i);
  }
}

TEST(StatsTest, MeanOfTwoArticles) {
  std::vector<AnnotationRecord> records;
  std::string a, b;
  for (int i = 0; i < 500; ++i) a += "w ";
  for (int i = 0; i < 600; ++i) b += "w ";
  ElementMap el;
  el[ElementKind::kWho] = {"w"};
  records.push_back(MakeRecord("a", DatasetId::kCnnDm, NewsCategory::kAttacks, a, el));
  records.push_back(MakeRecord("b", DatasetId::kCnnDm, NewsCategory::kAttacks, b, {}));
  CorpusStats s = ComputeCorpusStats(records);
  EXPECT_EQ(s.count, 2u);
  ASSERT_TRUE(s.mean_word_count);
  EXPECT_DOUBLE_EQ(*s.mean_word_count, 550.0);
  EXPECT_EQ(s.records_with_element[Index(ElementKind::kWho)], 1u);
  EXPECT_EQ(s.per_category[1], 2u);
}

TEST(StatsTest, EmptyCorpusHasNoMean) {
  CorpusStats s = ComputeCorpusStats({});
  EXPECT_EQ(s.count, 0u);
  EXPECT_FALSE(s.mean_word_count);
  EXPECT_TRUE(StatsToJson(s, std::nullopt)["mean_word_count"].is_null());
}

TEST(StatsTest, MeanMatchesRecount) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<AnnotationRecord> records;
    std::uniform_int_distribution<int> len(1, 300);
    double total = 0;
    const int n = 1 + trial;
    for (int i = 0; i < n; ++i) {
      const int words = len(rng);
      std::string text;
      for (int w = 0; w < words; ++w) text += (w % 3 ? " x" : "\t\ny");
      total += words;
      records.push_back(MakeRecord("r" + std::to_string(i), DatasetId::kNyt,
                                   NewsCategory::kAttacks, text, {}));
    }
    CorpusStats s = ComputeCorpusStats(records);
    ASSERT_NEAR(*s.mean_word_count, total / n, 1e-9);
  }
}

TEST(StatsTest, FormatShowsReferenceMean) {
  auto records = LoadCorpus(testing::FixturePath("cnndm_100.jsonl"));
  const std::string text = FormatStats(ComputeCorpusStats(records), DatasetId::kCnnDm);
  EXPECT_NE(text.find("(reference: 579)"), std::string::npos);
}

}  // namespace
}  // namespace fivew1h
