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

#include <cctype>
#include <optional>
#include <utility>

#include "fivew1h/text_util.h"

namespace fivew1h {
namespace {

// Bounds the work spent on brace candidates in adversarial inputs.
constexpr int kMaxObjectCandidates = 64;
// Deeper JSON values are dropped instead of being dumped to text.
constexpr std::size_t kMaxValueDepth = 32;

bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

std::size_t JsonDepth(const Json& root) {
  std::size_t max_depth = 0;
  std::vector<std::pair<const Json*, std::size_t>> stack{{&root, 1}};
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    max_depth = std::max(max_depth, depth);
    if (depth > kMaxValueDepth) break;
    if (node->is_structured()) {
      for (const Json& child : *node) stack.emplace_back(&child, depth + 1);
    }
  }
  return max_depth;
}

void AppendSpan(ElementMap::Spans& spans, std::string s) {
  if (!Trim(s).empty()) spans.push_back(std::move(s));
}

void AppendValue(ElementMap::Spans& spans, const Json& value) {
  if (value.is_null()) return;
  if (value.is_string()) {
    AppendSpan(spans, value.get<std::string>());
  } else if (JsonDepth(value) <= kMaxValueDepth) {
    AppendSpan(spans, DumpJson(value));
  }
}

void AppendJsonValue(ElementMap::Spans& spans, const Json& value) {
  if (value.is_array()) {
    for (const Json& item : value) AppendValue(spans, item);
  } else {
    AppendValue(spans, value);
  }
}

// Fills `out` from the element keys of `object`. Returns false when the
// object has none.
bool ExtractFromObject(const Json& object, ParsedExtraction& out) {
  if (!object.is_object()) return false;
  ParsedExtraction trial;
  bool any = false;
  for (const auto& [key, value] : object.items()) {
    std::optional<ElementKind> e = ParseElementName(key);
    if (!e) {
      trial.warnings.push_back("ignored unknown key \"" + key + "\"");
      continue;
    }
    any = true;
    AppendJsonValue(trial.elements[*e], value);
  }
  if (!any) return false;
  out.elements = std::move(trial.elements);
  out.warnings.insert(out.warnings.end(), trial.warnings.begin(), trial.warnings.end());
  return true;
}

std::optional<Json> TryParse(std::string_view text) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return std::nullopt;
  return j;
}

// Index one past the bracket closing the value opened at text[start], or
// npos. Double-quoted strings (with escapes) are skipped.
std::size_t MatchClosing(std::string_view text, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      ++depth;
    } else if (c == '}' || c == ']') {
      if (--depth == 0) return i + 1;
      if (depth < 0) return std::string_view::npos;
    }
  }
  return std::string_view::npos;
}

bool TryFencedBlocks(std::string_view text, ParsedExtraction& out) {
  std::size_t pos = 0;
  while ((pos = text.find("```", pos)) != std::string_view::npos) {
    std::size_t body = text.find('\n', pos + 3);
    if (body == std::string_view::npos) return false;
    std::size_t end = text.find("```", body + 1);
    if (end == std::string_view::npos) return false;
    if (auto j = TryParse(text.substr(body + 1, end - body - 1))) {
      if (ExtractFromObject(*j, out)) return true;
    }
    pos = end + 3;
  }
  return false;
}

bool TryBraceObjects(std::string_view text, ParsedExtraction& out) {
  int candidates = 0;
  for (std::size_t pos = text.find('{'); pos != std::string_view::npos;
       pos = text.find('{', pos + 1)) {
    if (++candidates > kMaxObjectCandidates) return false;
    std::size_t end = MatchClosing(text, pos);
    if (end == std::string_view::npos) continue;
    if (auto j = TryParse(text.substr(pos, end - pos))) {
      if (ExtractFromObject(*j, out)) return true;
    }
  }
  return false;
}

// Runs of `"element": <json>` without enclosing braces, as produced by
// models that echo the key layout but drop the object syntax.
bool TryQuotedKeyPairs(std::string_view text, ParsedExtraction& out) {
  ElementMap found;
  bool any = false;
  for (std::size_t pos = text.find('"'); pos != std::string_view::npos;
       pos = text.find('"', pos + 1)) {
    std::size_t close = text.find('"', pos + 1);
    if (close == std::string_view::npos) break;
    std::optional<ElementKind> e = ParseElementName(text.substr(pos + 1, close - pos - 1));
    if (!e || close - pos - 1 > 16) continue;
    std::size_t i = close + 1;
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    if (i >= text.size() || text[i] != ':') continue;
    ++i;
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    if (i >= text.size()) break;
    std::size_t end;
    if (text[i] == '[' || text[i] == '{') {
      end = MatchClosing(text, i);
    } else if (text[i] == '"') {
      // A JSON string value: scan to the unescaped closing quote.
      end = std::string_view::npos;
      for (std::size_t k = i + 1; k < text.size(); ++k) {
        if (text[k] == '\\') {
          ++k;
        } else if (text[k] == '"') {
          end = k + 1;
          break;
        }
      }
    } else {
      continue;
    }
    if (end == std::string_view::npos) continue;
    if (auto j = TryParse(text.substr(i, end - i))) {
      AppendJsonValue(found[*e], *j);
      any = true;
      pos = end - 1;
    }
  }
  if (!any) return false;
  out.elements = std::move(found);
  return true;
}

// Skips bullets, numbering, quotes and emphasis marks that may precede or
// follow an element name on a key line.
std::size_t SkipDecoration(std::string_view s, std::size_t i, bool allow_bullets) {
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (IsAsciiSpace(s[i]) || c == '"' || c == '\'' || c == '*' || c == '_' ||
        c == '`') {
      ++i;
    } else if (allow_bullets && (c == '-' || c == '>' || c == '#' || c == '+')) {
      ++i;
    } else if (allow_bullets && std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '.' || s[j] == ')')) {
        i = j + 1;
      } else {
        break;
      }
    } else if (c == 0xE2 && i + 2 < s.size() &&
               static_cast<unsigned char>(s[i + 1]) == 0x80 &&
               (static_cast<unsigned char>(s[i + 2]) == 0x9C ||   // left quote
                static_cast<unsigned char>(s[i + 2]) == 0x9D ||   // right quote
                (allow_bullets &&
                 static_cast<unsigned char>(s[i + 2]) == 0xA2))) {  // bullet
      i += 3;
    } else {
      break;
    }
  }
  return i;
}

struct KeyLine {
  ElementKind element;
  std::string value;
};

std::optional<KeyLine> MatchKeyLine(std::string_view line) {
  std::size_t i = SkipDecoration(line, 0, /*allow_bullets=*/true);
  std::size_t name_end = i;
  while (name_end < line.size() && IsAlnum(line[name_end])) ++name_end;
  std::optional<ElementKind> e = ParseElementName(line.substr(i, name_end - i));
  if (!e || name_end == i) return std::nullopt;
  std::size_t j = SkipDecoration(line, name_end, /*allow_bullets=*/false);
  if (j >= line.size() || line[j] != ':') return std::nullopt;
  return KeyLine{*e, std::string(Trim(line.substr(j + 1)))};
}

std::string_view StripBullet(std::string_view line) {
  line = Trim(line);
  if (!line.empty() && (line.front() == '-' || line.front() == '*')) {
    line.remove_prefix(1);
  } else if (line.size() >= 3 && line.substr(0, 3) == "\xE2\x80\xA2") {
    line.remove_prefix(3);
  }
  return Trim(line);
}

void AppendLineValue(ElementMap::Spans& spans, std::string_view value) {
  std::string_view candidate = value;
  if (!candidate.empty() && candidate.back() == ',') candidate.remove_suffix(1);
  if (!candidate.empty() && (candidate.front() == '[' || candidate.front() == '"')) {
    if (auto j = TryParse(candidate); j && (j->is_array() || j->is_string())) {
      AppendJsonValue(spans, *j);
      return;
    }
  }
  AppendSpan(spans, std::string(value));
}

bool TryKeyLines(std::string_view text, ParsedExtraction& out) {
  ElementMap found;
  bool any = false;
  // Set after a header line with an empty value; following lines are items.
  bool list_open = false;
  ElementKind list_element = ElementKind::kWhat;
  for (std::string line : SplitLines(text)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto key = MatchKeyLine(line)) {
      any = true;
      list_open = key->value.empty();
      list_element = key->element;
      if (!list_open) AppendLineValue(found[key->element], key->value);
      continue;
    }
    if (!list_open) continue;
    std::string_view item = StripBullet(line);
    if (item.empty()) {
      if (!found[list_element].empty()) list_open = false;
      continue;
    }
    AppendLineValue(found[list_element], item);
  }
  if (!any) return false;
  out.elements = std::move(found);
  return true;
}

}  // namespace

std::string_view ParseModeName(ParseMode mode) {
  switch (mode) {
    case ParseMode::kStrictJson: return "strict_json";
    case ParseMode::kFencedJson: return "fenced_json";
    case ParseMode::kKeyLineFallback: return "key_line_fallback";
    case ParseMode::kUnparsed: return "unparsed";
  }
  return "unparsed";
}

ParsedExtraction ParseResponseText(std::string_view article_id, std::string_view text) {
  ParsedExtraction out;
  out.article_id = std::string(article_id);
  try {
    if (auto j = TryParse(Trim(text)); j && ExtractFromObject(*j, out)) {
      out.mode = ParseMode::kStrictJson;
    } else if (TryFencedBlocks(text, out) || TryBraceObjects(text, out) ||
               TryQuotedKeyPairs(text, out)) {
      out.mode = ParseMode::kFencedJson;
    } else if (TryKeyLines(text, out)) {
      out.mode = ParseMode::kKeyLineFallback;
    }
  } catch (const std::exception& e) {
    out = ParsedExtraction{};
    out.article_id = std::string(article_id);
    out.warnings.push_back(std::string("parser error: ") + e.what());
  }
  if (out.mode == ParseMode::kUnparsed) {
    out.elements = ElementMap{};
    out.valid.fill(false);
    return out;
  }
  for (ElementKind e : kAllElements) out.valid[Index(e)] = !out.elements[e].empty();
  return out;
}

ParsedExtraction ParseResponse(const RawResponse& raw) {
  return ParseResponseText(raw.article_id, raw.raw_text);
}

ValidityCounts ValiditySummary(std::span<const ParsedExtraction> parsed) {
  ValidityCounts counts{};
  for (const ParsedExtraction& p : parsed) {
    for (ElementKind e : kAllElements) {
      if (p.is_valid(e)) ++counts[Index(e)];
    }
  }
  return counts;
}

Json ParsedExtraction::ToJson() const {
  Json j;
  j["article_id"] = article_id;
  j["parse_mode"] = ParseModeName(mode);
  Json el = Json::object(), v = Json::object();
  for (ElementKind e : kAllElements) {
    el[std::string(ElementName(e))] = elements[e];
    v[std::string(ElementName(e))] = valid[Index(e)];
  }
  j["elements"] = std::move(el);
  j["valid"] = std::move(v);
  j["warnings"] = warnings;
  return j;
}

ParsedExtraction ParsedExtraction::FromJson(const Json& json) {
  try {
    ParsedExtraction p;
    p.article_id = json.at("article_id").get<std::string>();
    const std::string mode = json.at("parse_mode").get<std::string>();
    bool known = false;
    for (ParseMode m : {ParseMode::kStrictJson, ParseMode::kFencedJson,
                        ParseMode::kKeyLineFallback, ParseMode::kUnparsed}) {
      if (mode == ParseModeName(m)) {
        p.mode = m;
        known = true;
      }
    }
    if (!known) throw IoError("unknown parse_mode \"" + mode + "\"");
    for (ElementKind e : kAllElements) {
      const std::string key(ElementName(e));
      p.elements[e] = json.at("elements").at(key).get<std::vector<std::string>>();
      p.valid[Index(e)] = json.at("valid").at(key).get<bool>();
    }
    if (auto it = json.find("warnings"); it != json.end()) {
      p.warnings = it->get<std::vector<std::string>>();
    }
    return p;
  } catch (const Json::exception& e) {
    throw IoError(std::string("parsed run entry: ") + e.what());
  }
}

void WriteParsedRun(const std::filesystem::path& path,
                    std::span<const ParsedExtraction> parsed) {
  std::string content;
  for (const ParsedExtraction& p : parsed) {
    content += DumpJson(p.ToJson());
    content.push_back('\n');
  }
  WriteFile(path, content);
}

std::vector<ParsedExtraction> ReadParsedRun(const std::filesystem::path& path) {
  std::vector<ParsedExtraction> parsed;
  std::vector<std::string> lines = SplitLines(ReadFile(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    Json j = Json::parse(lines[i], nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      throw IoError(path.string() + ":" + std::to_string(i + 1) + ": invalid JSON");
    }
    parsed.push_back(ParsedExtraction::FromJson(j));
  }
  return parsed;
}

}  // namespace fivew1h
