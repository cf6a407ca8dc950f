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

#include <gtest/gtest.h>

namespace fivew1h {
namespace {

TEST(ElementsTest, CanonicalOrderAndNames) {
  const char* expected[] = {"what", "when", "where", "why", "who", "how"};
  ASSERT_EQ(kAllElements.size(), 6u);
  for (std::size_t i = 0; i < kAllElements.size(); ++i) {
    EXPECT_EQ(Index(kAllElements[i]), i);
    EXPECT_EQ(ElementName(kAllElements[i]), expected[i]);
  }
  EXPECT_EQ(ElementTitle(ElementKind::kWhere), "Where");
}

TEST(ElementsTest, ParseIsCaseInsensitive) {
  for (const char* s : {"what", "What", "WHAT", " wHaT "}) {
    EXPECT_EQ(ParseElementName(s), ElementKind::kWhat) << s;
  }
  EXPECT_EQ(ParseElementName("Who"), ElementKind::kWho);
  EXPECT_FALSE(ParseElementName("whom"));
  EXPECT_FALSE(ParseElementName(""));
}

TEST(ElementsTest, CategoryCodes) {
  for (int code = 1; code <= 6; ++code) {
    auto c = CategoryFromCode(code);
    ASSERT_TRUE(c);
    EXPECT_EQ(CategoryCode(*c), code);
    EXPECT_FALSE(CategoryName(*c).empty());
  }
  EXPECT_FALSE(CategoryFromCode(0));
  EXPECT_FALSE(CategoryFromCode(7));
  EXPECT_EQ(CategoryFromCode(6), NewsCategory::kInvestigationsTrials);
}

TEST(ElementsTest, DatasetTagsRoundTrip) {
  const char* tags[] = {"cnndm", "xsum", "nyt", "ramds"};
  for (std::size_t i = 0; i < kAllDatasets.size(); ++i) {
    EXPECT_EQ(DatasetTag(kAllDatasets[i]), tags[i]);
    EXPECT_EQ(ParseDatasetTag(tags[i]), kAllDatasets[i]);
  }
  EXPECT_FALSE(ParseDatasetTag("cnn"));
}

TEST(ElementsTest, ReferenceWordCounts) {
  EXPECT_EQ(ReferenceAverageWords(DatasetId::kCnnDm), 579);
  EXPECT_EQ(ReferenceAverageWords(DatasetId::kXSum), 523);
  EXPECT_EQ(ReferenceAverageWords(DatasetId::kNyt), 552);
  EXPECT_EQ(ReferenceAverageWords(DatasetId::kRaMds), 568);
}

TEST(ElementsTest, ElementMapCounts) {
  ElementMap m;
  EXPECT_TRUE(m.AllEmpty());
  EXPECT_EQ(m.TotalSpans(), 0u);
  m[ElementKind::kWho] = {"a", "b"};
  m[ElementKind::kHow] = {"c"};
  EXPECT_FALSE(m.AllEmpty());
  EXPECT_EQ(m.TotalSpans(), 3u);
  ElementMap n = m;
  EXPECT_EQ(m, n);
  n[ElementKind::kHow].clear();
  EXPECT_NE(m, n);
}

}  // namespace
}  // namespace fivew1h
