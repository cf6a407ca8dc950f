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

#include "fivew1h/response_parser.h"

#include <gtest/gtest.h>

#include <cctype>
#include <random>

#include "fivew1h/sft.h"
#include "test_support.h"

namespace fivew1h {
namespace {

using Spans = std::vector<std::string>;

TEST(ResponseParserTest, StrictJson) {
  auto p = ParseResponseText(
      "a", "{\"what\": [\"x\"], \"when\": [], \"where\": [\"Paris\"], \"why\": [], "
           "\"who\": [\"Al\", \"Bo\"], \"how\": []}");
  EXPECT_EQ(p.mode, ParseMode::kStrictJson);
  EXPECT_EQ(p.elements[ElementKind::kWho], (Spans{"Al", "Bo"}));
  EXPECT_TRUE(p.is_valid(ElementKind::kWhat));
  EXPECT_FALSE(p.is_valid(ElementKind::kWhen));
  EXPECT_TRUE(p.warnings.empty());
}

TEST(ResponseParserTest, FencedJsonWithProse) {
  auto p = ParseResponseText(
      "a", "Sure! Here is the answer:\n```json\n{\"What\": \"a storm\", \"Who\": []}\n```\nHope "
           "this helps.");
  EXPECT_EQ(p.mode, ParseMode::kFencedJson);
  EXPECT_EQ(p.elements[ElementKind::kWhat], (Spans{"a storm"}));
  EXPECT_FALSE(p.is_valid(ElementKind::kWho));
}

TEST(ResponseParserTest, EmbeddedObjectWithoutFence) {
  auto p = ParseResponseText("a", "Answer: {\"where\": [\"Rome\"]} done");
  EXPECT_EQ(p.mode, ParseMode::kFencedJson);
  EXPECT_EQ(p.elements[ElementKind::kWhere], (Spans{"Rome"}));
}

TEST(ResponseParserTest, KeyLineFallbackKeepsCommas) {
  auto p = ParseResponseText("a", "What: storm\nWho: Alice, Bob\nHow:\n- by boat\n- by car\n");
  EXPECT_EQ(p.mode, ParseMode::kKeyLineFallback);
  EXPECT_EQ(p.elements[ElementKind::kWho], (Spans{"Alice, Bob"}));
  EXPECT_EQ(p.elements[ElementKind::kHow], (Spans{"by boat", "by car"}));
  EXPECT_FALSE(p.is_valid(ElementKind::kWhen));
}

TEST(ResponseParserTest, KeyCasingAndDecoration) {
  for (const char* text : {"WHERE: Oslo", "**Where**: Oslo", "1. where: Oslo", "\"Where\": Oslo",
                           "- Where : Oslo"}) {
    auto p = ParseResponseText("a", text);
    EXPECT_NE(p.mode, ParseMode::kUnparsed) << text;
    EXPECT_EQ(p.elements[ElementKind::kWhere], (Spans{"Oslo"})) << text;
  }
}

TEST(ResponseParserTest, UnknownKeysWarned) {
  auto p = ParseResponseText("a", "{\"what\": [\"x\"], \"whom\": [\"y\"]}");
  EXPECT_EQ(p.mode, ParseMode::kStrictJson);
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("whom"), std::string::npos);
}

TEST(ResponseParserTest, UnparsedIsAllInvalid) {
  for (const char* text : {"", "I cannot answer that.", "{\"foo\": 1}", "```json\n{broken\n```",
                           "[1, 2, 3]"}) {
    auto p = ParseResponseText("a", text);
    EXPECT_EQ(p.mode, ParseMode::kUnparsed) << text;
    for (ElementKind e : kAllElements) EXPECT_FALSE(p.is_valid(e));
  }
}

TEST(ResponseParserTest, BlankAnswersAreInvalid) {
  auto p = ParseResponseText("a", "{\"what\": [\"  \", \"\"], \"who\": null, \"how\": \"by x\"}");
  EXPECT_EQ(p.mode, ParseMode::kStrictJson);
  EXPECT_FALSE(p.is_valid(ElementKind::kWhat));
  EXPECT_FALSE(p.is_valid(ElementKind::kWho));
  EXPECT_EQ(p.elements[ElementKind::kHow], (Spans{"by x"}));
}

TEST(ResponseParserTest, SampleArticleResponseStyles) {
  auto lines = SplitLines(ReadFile(testing::FixturePath("sample_responses.jsonl")));
  int checked = 0;
  for (const std::string& line : lines) {
    if (line.empty()) continue;
    Json row = Json::parse(line);
    auto p = ParseResponseText(row["article_id"].get<std::string>(),
                               row["raw_text"].get<std::string>());
    const std::string style = row["style"];
    EXPECT_EQ(ParseModeName(p.mode), row["expected_mode"].get<std::string>()) << style;
    for (ElementKind e : kAllElements) {
      EXPECT_EQ(p.is_valid(e), row["expected_valid"][std::string(ElementName(e))].get<bool>())
          << style << " " << ElementName(e);
    }
    ++checked;
  }
  EXPECT_EQ(checked, 4);
}

std::string RandomBytes(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces = {
      "{", "}", "[", "]", "\"", "\\", ":", ",", "\n", "```", "```json\n", "what", "When",
      "\"who\"", "How:", " ", "x", "\xC3\xA9", "\xFF", "\xE2\x80\x9C", "null", "1e999",
      "-", "*", "1.", "\t", "true", "{\"why\": ", std::string(1, '\0')};
  std::string s;
  const std::size_t n = rng() % 60;
  for (std::size_t i = 0; i < n; ++i) s += pieces[rng() % pieces.size()];
  return s;
}

TEST(ResponseParserTest, NeverThrowsOnFuzz) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 5000; ++i) {
    std::string text = RandomBytes(rng);
    if (i % 3 == 0) {
      for (int k = 0; k < 8; ++k) text += static_cast<char>(rng() & 0xFF);
    }
    ParsedExtraction p;
    ASSERT_NO_THROW(p = ParseResponseText("f", text));
    for (ElementKind e : kAllElements) {
      ASSERT_EQ(p.is_valid(e), p.mode != ParseMode::kUnparsed && !p.elements[e].empty());
    }
  }
}

TEST(ResponseParserTest, DeepNestingDoesNotCrash) {
  std::string deep = "{\"what\": " + std::string(5000, '[') + std::string(5000, ']') + "}";
  EXPECT_NO_THROW(ParseResponseText("d", deep));
  EXPECT_NO_THROW(ParseResponseText("d", std::string(100000, '{')));
}

// Parsing the canonical serialization recovers the map exactly.
TEST(ResponseParserTest, ParseOfSerializeIsIdentity) {
  std::mt19937_64 rng(8);
  const std::vector<std::string> pieces = {"a", "B", " ", "\"", "\\", "\n", ":", ",",
                                           "{", "\xC3\xA9", "what", "-"};
  for (int trial = 0; trial < 500; ++trial) {
    ElementMap el;
    for (ElementKind e : kAllElements) {
      const std::size_t spans = rng() % 3;
      for (std::size_t s = 0; s < spans; ++s) {
        std::string span = "s";
        const std::size_t len = rng() % 10;
        for (std::size_t i = 0; i < len; ++i) span += pieces[rng() % pieces.size()];
        el[e].push_back(span);
      }
    }
    auto p = ParseResponseText("r", SerializeElementMap(el));
    ASSERT_EQ(p.mode, ParseMode::kStrictJson);
    ASSERT_EQ(p.elements, el);
    for (ElementKind e : kAllElements) ASSERT_EQ(p.is_valid(e), !el[e].empty());
  }
}

TEST(ResponseParserTest, KeyCasingProperty) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    Json obj = Json::object();
    ElementMap expected;
    for (ElementKind e : kAllElements) {
      std::string key(ElementName(e));
      for (char& c : key) {
        if (rng() % 2) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      }
      obj[key] = Json::array({"v" + key});
      expected[e] = {"v" + key};
    }
    auto p = ParseResponseText("k", DumpJson(obj));
    ASSERT_EQ(p.elements, expected);
  }
}

TEST(ResponseParserTest, SummaryAndRoundTrip) {
  std::vector<ParsedExtraction> parsed = {
      ParseResponseText("a", "{\"what\": [\"x\"], \"who\": [\"y\"]}"),
      ParseResponseText("b", "What: z"),
      ParseResponseText("c", "nothing")};
  ValidityCounts c = ValiditySummary(parsed);
  EXPECT_EQ(c[Index(ElementKind::kWhat)], 2u);
  EXPECT_EQ(c[Index(ElementKind::kWho)], 1u);
  EXPECT_EQ(c[Index(ElementKind::kHow)], 0u);
  auto dir = testing::ScratchDir("parser_rt");
  WriteParsedRun(dir / "p.jsonl", parsed);
  auto back = ReadParsedRun(dir / "p.jsonl");
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back[i].article_id, parsed[i].article_id);
    EXPECT_EQ(back[i].elements, parsed[i].elements);
    EXPECT_EQ(back[i].mode, parsed[i].mode);
    EXPECT_EQ(back[i].valid, parsed[i].valid);
  }
}

}  // namespace
}  // namespace fivew1h
