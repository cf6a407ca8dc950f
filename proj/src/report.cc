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

#include "fivew1h/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <unordered_map>

#include "fivew1h/text_util.h"

namespace fivew1h {
namespace {

std::string Fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string FormatFraction(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double ParseNumber(const std::string& field, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw ReportError(ReportError::Kind::kBadCsv, "bad " + what + ": \"" + field + "\"");
  }
}

std::vector<std::string> SplitCsvRow(std::string_view row) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string MarkdownCell(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n' || c == '\r') out.push_back(' ');
    else out.push_back(c);
  }
  return out;
}

DatasetId DatasetOrThrow(const std::string& tag) {
  auto d = ParseDatasetTag(tag);
  if (!d) throw ReportError(ReportError::Kind::kBadCsv, "unknown dataset \"" + tag + "\"");
  return *d;
}

constexpr std::array<std::string_view, 4> kMetricLabels = {"R-1", "R-2", "R-L", "B-4"};

std::array<double, 4> MetricValues(const ElementReport& r) {
  return {r.rouge1, r.rouge2, r.rougeL, r.bleu4};
}

constexpr std::string_view kValidityNote =
    "Valid response: a non-empty answer for the element after parsing. "
    "Elements whose valid count does not exceed the threshold are shown as \"—\"; "
    "their means are still stored in report.csv.";

}  // namespace

ValidThreshold ValidThreshold::Absolute(std::size_t count) {
  return {Kind::kAbsolute, static_cast<double>(count)};
}

ValidThreshold ValidThreshold::Fraction(double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("threshold fraction must be in [0, 1]");
  }
  return {Kind::kFraction, fraction};
}

bool ValidThreshold::Displays(std::size_t valid_count, std::size_t article_count) const {
  const double limit =
      kind == Kind::kAbsolute ? value : value * static_cast<double>(article_count);
  return static_cast<double>(valid_count) > limit;
}

std::string ValidThreshold::Rule() const {
  if (kind == Kind::kAbsolute) return "absolute>" + FormatFraction(value);
  return "fraction>" + FormatFraction(value);
}

ValidThreshold ValidThreshold::FromRule(std::string_view rule) {
  auto parse = [&](std::string_view prefix) -> std::optional<double> {
    if (rule.substr(0, prefix.size()) != prefix) return std::nullopt;
    return ParseNumber(std::string(rule.substr(prefix.size())), "threshold rule");
  };
  if (auto v = parse("absolute>")) {
    if (*v < 0 || *v != std::floor(*v)) {
      throw ReportError(ReportError::Kind::kBadCsv, "bad threshold rule");
    }
    return Absolute(static_cast<std::size_t>(*v));
  }
  if (auto v = parse("fraction>")) {
    if (!(*v >= 0.0 && *v <= 1.0)) {
      throw ReportError(ReportError::Kind::kBadCsv, "bad threshold rule");
    }
    return Fraction(*v);
  }
  throw ReportError(ReportError::Kind::kBadCsv,
                    "unknown threshold rule \"" + std::string(rule) + "\"");
}

std::string_view InvalidPolicyName(InvalidPolicy policy) {
  return policy == InvalidPolicy::kExclude ? "exclude" : "zero";
}

std::optional<InvalidPolicy> ParseInvalidPolicy(std::string_view name) {
  if (name == "exclude") return InvalidPolicy::kExclude;
  if (name == "zero") return InvalidPolicy::kScoreZero;
  return std::nullopt;
}

Json ArticleScores::ToJson() const {
  Json j;
  j["article_id"] = article_id;
  Json el = Json::object();
  for (ElementKind e : kAllElements) {
    Json s = scores[Index(e)].ToJson();
    Json entry;
    entry["valid"] = valid[Index(e)];
    for (auto& [k, v] : s.items()) entry[k] = v;
    el[std::string(ElementName(e))] = std::move(entry);
  }
  j["elements"] = std::move(el);
  return j;
}

ArticleScores ArticleScores::FromJson(const Json& json) {
  try {
    ArticleScores a;
    a.article_id = json.at("article_id").get<std::string>();
    const Json& el = json.at("elements");
    auto triple = [](const Json& t) {
      return ScoreTriple{t.at("precision").get<double>(), t.at("recall").get<double>(),
                         t.at("f1").get<double>()};
    };
    for (ElementKind e : kAllElements) {
      const Json& entry = el.at(std::string(ElementName(e)));
      a.valid[Index(e)] = entry.at("valid").get<bool>();
      MetricScores& s = a.scores[Index(e)];
      s.rouge1 = triple(entry.at("rouge1"));
      s.rouge2 = triple(entry.at("rouge2"));
      s.rougeL = triple(entry.at("rougeL"));
      s.bleu4 = entry.at("bleu4").get<double>();
    }
    return a;
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed score record: ") + e.what());
  }
}

std::vector<ArticleScores> ScoreRun(std::span<const ParsedExtraction> parsed,
                                    std::span<const AnnotationRecord> gold,
                                    MatchMode mode) {
  std::unordered_map<std::string, std::size_t> gold_pos;
  for (std::size_t i = 0; i < gold.size(); ++i) gold_pos.emplace(gold[i].id(), i);

  std::vector<std::string> orphans;
  std::vector<std::pair<std::size_t, const ParsedExtraction*>> joined;
  for (const ParsedExtraction& p : parsed) {
    auto it = gold_pos.find(p.article_id);
    if (it == gold_pos.end()) {
      orphans.push_back(p.article_id);
    } else {
      joined.emplace_back(it->second, &p);
    }
  }
  if (!orphans.empty()) {
    std::string msg = "no gold record for " + std::to_string(orphans.size()) + " article(s):";
    for (const auto& id : orphans) msg += " " + id;
    throw ReportError(ReportError::Kind::kMissingGold, msg, orphans);
  }
  std::stable_sort(joined.begin(), joined.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<ArticleScores> out;
  out.reserve(joined.size());
  for (const auto& [pos, p] : joined) {
    ArticleScores a;
    a.article_id = p->article_id;
    for (ElementKind e : kAllElements) {
      a.valid[Index(e)] = p->is_valid(e);
      if (p->is_valid(e)) {
        a.scores[Index(e)] = ScoreElement(p->elements[e], gold[pos].elements[e], mode);
      }
    }
    out.push_back(std::move(a));
  }
  return out;
}

void WriteScores(const std::filesystem::path& path,
                 std::span<const ArticleScores> scores) {
  std::string content;
  for (const ArticleScores& a : scores) {
    content += DumpJson(a.ToJson());
    content.push_back('\n');
  }
  WriteFile(path, content);
}

std::vector<ArticleScores> ReadScores(const std::filesystem::path& path) {
  std::vector<ArticleScores> out;
  std::size_t line_no = 0;
  for (const std::string& line : SplitLines(ReadFile(path))) {
    ++line_no;
    if (Trim(line).empty()) continue;
    Json j = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": not JSON");
    }
    out.push_back(ArticleScores::FromJson(j));
  }
  return out;
}

EvalReport AggregateScores(std::span<const ArticleScores> scores,
                           const ReportMeta& meta, ValidThreshold threshold,
                           InvalidPolicy policy) {
  EvalReport r;
  r.run_id = meta.run_id;
  r.model_id = meta.model_id;
  r.train_dataset = meta.train_dataset;
  r.eval_dataset = meta.eval_dataset;
  r.article_count = scores.size();
  r.threshold = threshold;
  r.invalid_policy = policy;
  for (ElementKind e : kAllElements) {
    ElementReport& er = r.elements[Index(e)];
    er.element = e;
    double sum[4] = {0, 0, 0, 0};
    for (const ArticleScores& a : scores) {
      if (!a.valid[Index(e)]) continue;
      ++er.valid_count;
      const MetricScores& s = a.scores[Index(e)];
      sum[0] += s.rouge1.f1;
      sum[1] += s.rouge2.f1;
      sum[2] += s.rougeL.f1;
      sum[3] += s.bleu4;
    }
    const std::size_t denom =
        policy == InvalidPolicy::kExclude ? er.valid_count : scores.size();
    if (denom > 0) {
      er.rouge1 = 100.0 * sum[0] / static_cast<double>(denom);
      er.rouge2 = 100.0 * sum[1] / static_cast<double>(denom);
      er.rougeL = 100.0 * sum[2] / static_cast<double>(denom);
      er.bleu4 = 100.0 * sum[3] / static_cast<double>(denom);
    }
    er.displayed = threshold.Displays(er.valid_count, r.article_count);
  }
  return r;
}

EvalReport Aggregate(std::span<const ParsedExtraction> parsed,
                     std::span<const AnnotationRecord> gold, const ReportMeta& meta,
                     ValidThreshold threshold, InvalidPolicy policy, MatchMode mode) {
  std::vector<ArticleScores> scores = ScoreRun(parsed, gold, mode);
  return AggregateScores(scores, meta, threshold, policy);
}

void ApplyThreshold(EvalReport& report, ValidThreshold threshold) {
  report.threshold = threshold;
  for (ElementReport& er : report.elements) {
    er.displayed = threshold.Displays(er.valid_count, report.article_count);
  }
}

std::string RenderTable(std::span<const EvalReport> reports, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::kCsv) {
    out << "run_id,model,train_dataset,eval_dataset,articles,threshold_rule,invalid_policy";
    for (ElementKind e : kAllElements) {
      const std::string n(ElementName(e));
      out << ',' << n << "_valid," << n << "_displayed," << n << "_r1," << n << "_r2,"
          << n << "_rl," << n << "_b4";
    }
    out << '\n';
    for (const EvalReport& r : reports) {
      out << CsvField(r.run_id) << ',' << CsvField(r.model_id) << ','
          << DatasetTag(r.train_dataset) << ',' << DatasetTag(r.eval_dataset) << ','
          << r.article_count << ',' << r.threshold.Rule() << ','
          << InvalidPolicyName(r.invalid_policy);
      for (const ElementReport& er : r.elements) {
        out << ',' << er.valid_count << ',' << (er.displayed ? "true" : "false");
        for (double v : MetricValues(er)) out << ',' << Fixed2(v);
      }
      out << '\n';
    }
    return out.str();
  }

  out << "| Model | Train | Eval |";
  for (ElementKind e : kAllElements) {
    for (std::string_view m : kMetricLabels) out << ' ' << ElementTitle(e) << ' ' << m << " |";
  }
  out << "\n|---|---|---|";
  for (std::size_t i = 0; i < kNumElements * kMetricLabels.size(); ++i) out << "---:|";
  out << '\n';
  for (const EvalReport& r : reports) {
    out << "| " << MarkdownCell(r.model_id) << " | " << DatasetDisplayName(r.train_dataset)
        << " | " << DatasetDisplayName(r.eval_dataset) << " |";
    for (const ElementReport& er : r.elements) {
      for (double v : MetricValues(er)) out << ' ' << (er.displayed ? Fixed2(v) : "—") << " |";
    }
    out << '\n';
  }

  out << "\n| Model | Articles |";
  for (ElementKind e : kAllElements) out << ' ' << ElementTitle(e) << " valid |";
  out << "\n|---|---:|";
  for (std::size_t i = 0; i < kNumElements; ++i) out << "---:|";
  out << '\n';
  for (const EvalReport& r : reports) {
    out << "| " << MarkdownCell(r.model_id) << " | " << r.article_count << " |";
    for (const ElementReport& er : r.elements) out << ' ' << er.valid_count << " |";
    out << '\n';
  }

  out << '\n' << kValidityNote << '\n';
  for (const EvalReport& r : reports) {
    out << "\n- " << MarkdownCell(r.run_id.empty() ? r.model_id : r.run_id)
        << ": threshold rule " << r.threshold.Rule() << ", invalid responses "
        << (r.invalid_policy == InvalidPolicy::kExclude ? "excluded from means"
                                                        : "scored as 0")
        << ", ROUGE values are F1, scores in percent.";
  }
  out << '\n';
  return out.str();
}

std::string RenderTable(const EvalReport& report, TableFormat format) {
  return RenderTable(std::span<const EvalReport>(&report, 1), format);
}

std::vector<EvalReport> ParseReportCsv(std::string_view csv) {
  std::vector<std::string> lines = SplitLines(csv);
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ReportError(ReportError::Kind::kBadCsv, "missing header row");
  const std::size_t width = 7 + kNumElements * 6;
  if (SplitCsvRow(lines[0]).size() != width ||
      lines[0] != SplitLines(RenderTable(std::span<const EvalReport>{}, TableFormat::kCsv))[0]) {
    throw ReportError(ReportError::Kind::kBadCsv, "unexpected header row");
  }
  std::vector<EvalReport> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> f = SplitCsvRow(lines[i]);
    if (f.size() != width) {
      throw ReportError(ReportError::Kind::kBadCsv,
                        "row " + std::to_string(i + 1) + " has " + std::to_string(f.size()) +
                            " fields, expected " + std::to_string(width));
    }
    EvalReport r;
    r.run_id = f[0];
    r.model_id = f[1];
    r.train_dataset = DatasetOrThrow(f[2]);
    r.eval_dataset = DatasetOrThrow(f[3]);
    r.article_count = static_cast<std::size_t>(ParseNumber(f[4], "article count"));
    r.threshold = ValidThreshold::FromRule(f[5]);
    auto policy = ParseInvalidPolicy(f[6]);
    if (!policy) throw ReportError(ReportError::Kind::kBadCsv, "bad invalid_policy " + f[6]);
    r.invalid_policy = *policy;
    for (ElementKind e : kAllElements) {
      const std::size_t base = 7 + Index(e) * 6;
      ElementReport& er = r.elements[Index(e)];
      er.element = e;
      er.valid_count = static_cast<std::size_t>(ParseNumber(f[base], "valid count"));
      if (f[base + 1] != "true" && f[base + 1] != "false") {
        throw ReportError(ReportError::Kind::kBadCsv, "bad displayed flag " + f[base + 1]);
      }
      er.displayed = f[base + 1] == "true";
      er.rouge1 = ParseNumber(f[base + 2], "score");
      er.rouge2 = ParseNumber(f[base + 3], "score");
      er.rougeL = ParseNumber(f[base + 4], "score");
      er.bleu4 = ParseNumber(f[base + 5], "score");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string RenderValidCounts(std::span<const EvalReport> reports) {
  std::string out = "model";
  for (ElementKind e : kAllElements) out += "," + std::string(ElementName(e));
  out += '\n';
  for (const EvalReport& r : reports) {
    out += CsvField(r.model_id);
    for (const ElementReport& er : r.elements) out += "," + std::to_string(er.valid_count);
    out += '\n';
  }
  return out;
}

Json EvalReportToJson(const EvalReport& report) {
  Json j;
  j["run_id"] = report.run_id;
  j["model_id"] = report.model_id;
  j["train_dataset"] = DatasetTag(report.train_dataset);
  j["eval_dataset"] = DatasetTag(report.eval_dataset);
  j["article_count"] = report.article_count;
  j["threshold_rule"] = report.threshold.Rule();
  j["invalid_policy"] = InvalidPolicyName(report.invalid_policy);
  j["validity_definition"] = "non-empty answer after parsing";
  Json el = Json::object();
  for (const ElementReport& er : report.elements) {
    el[std::string(ElementName(er.element))] = {
        {"valid_count", er.valid_count}, {"displayed", er.displayed},
        {"rouge1", er.rouge1},           {"rouge2", er.rouge2},
        {"rougeL", er.rougeL},           {"bleu4", er.bleu4}};
  }
  j["elements"] = std::move(el);
  return j;
}

EvalReport EvalReportFromJson(const Json& json) {
  try {
    EvalReport r;
    r.run_id = json.at("run_id").get<std::string>();
    r.model_id = json.at("model_id").get<std::string>();
    r.train_dataset = DatasetOrThrow(json.at("train_dataset").get<std::string>());
    r.eval_dataset = DatasetOrThrow(json.at("eval_dataset").get<std::string>());
    r.article_count = json.at("article_count").get<std::size_t>();
    r.threshold = ValidThreshold::FromRule(json.at("threshold_rule").get<std::string>());
    auto policy = ParseInvalidPolicy(json.at("invalid_policy").get<std::string>());
    if (!policy) throw ReportError(ReportError::Kind::kBadReport, "bad invalid_policy");
    r.invalid_policy = *policy;
    const Json& el = json.at("elements");
    for (ElementKind e : kAllElements) {
      const Json& x = el.at(std::string(ElementName(e)));
      ElementReport& er = r.elements[Index(e)];
      er.element = e;
      er.valid_count = x.at("valid_count").get<std::size_t>();
      er.displayed = x.at("displayed").get<bool>();
      er.rouge1 = x.at("rouge1").get<double>();
      er.rouge2 = x.at("rouge2").get<double>();
      er.rougeL = x.at("rougeL").get<double>();
      er.bleu4 = x.at("bleu4").get<double>();
    }
    return r;
  } catch (const Json::exception& e) {
    throw ReportError(ReportError::Kind::kBadReport,
                      std::string("malformed report JSON: ") + e.what());
  } catch (const ReportError& e) {
    throw ReportError(ReportError::Kind::kBadReport, e.what());
  }
}

const EvalReport* TransferMatrix::Cell(DatasetId train, DatasetId eval) const {
  auto ti = std::find(train_datasets.begin(), train_datasets.end(), train);
  auto ei = std::find(eval_datasets.begin(), eval_datasets.end(), eval);
  if (ti == train_datasets.end() || ei == eval_datasets.end()) return nullptr;
  const std::size_t idx = static_cast<std::size_t>(ti - train_datasets.begin()) *
                              eval_datasets.size() +
                          static_cast<std::size_t>(ei - eval_datasets.begin());
  return cell_index[idx] < 0 ? nullptr : &reports[static_cast<std::size_t>(cell_index[idx])];
}

std::vector<std::pair<DatasetId, DatasetId>> TransferMatrix::EmptyCells() const {
  std::vector<std::pair<DatasetId, DatasetId>> out;
  for (DatasetId t : train_datasets) {
    for (DatasetId e : eval_datasets) {
      if (Cell(t, e) == nullptr) out.emplace_back(t, e);
    }
  }
  return out;
}

TransferMatrix BuildTransferMatrix(std::span<const EvalReport> reports) {
  TransferMatrix m;
  for (DatasetId d : kAllDatasets) {
    auto has = [&](auto field) {
      return std::any_of(reports.begin(), reports.end(),
                         [&](const EvalReport& r) { return r.*field == d; });
    };
    if (has(&EvalReport::train_dataset)) m.train_datasets.push_back(d);
    if (has(&EvalReport::eval_dataset)) m.eval_datasets.push_back(d);
  }

  m.cell_index.assign(m.train_datasets.size() * m.eval_datasets.size(), -1);
  for (const EvalReport& r : reports) {
    const std::size_t ti = static_cast<std::size_t>(
        std::find(m.train_datasets.begin(), m.train_datasets.end(), r.train_dataset) -
        m.train_datasets.begin());
    const std::size_t ei = static_cast<std::size_t>(
        std::find(m.eval_datasets.begin(), m.eval_datasets.end(), r.eval_dataset) -
        m.eval_datasets.begin());
    int& slot = m.cell_index[ti * m.eval_datasets.size() + ei];
    if (slot >= 0) {
      throw ReportError(ReportError::Kind::kDuplicateCell,
                        "two reports for train=" + std::string(DatasetTag(r.train_dataset)) +
                            " eval=" + std::string(DatasetTag(r.eval_dataset)) + ": " +
                            m.reports[static_cast<std::size_t>(slot)].run_id + " and " +
                            r.run_id);
    }
    slot = static_cast<int>(m.reports.size());
    m.reports.push_back(r);
  }
  return m;
}

std::string TransferRowLabel(const EvalReport& report) {
  std::string label(DatasetShortName(report.eval_dataset));
  if (report.train_dataset == report.eval_dataset) return label + "(in-domain)";
  return label + "(" + std::string(DatasetShortName(report.train_dataset)) + " fine-tune)";
}

namespace {

// Rows grouped by eval dataset, in-domain first, then by train dataset.
std::vector<const EvalReport*> TransferRows(const TransferMatrix& m) {
  std::vector<const EvalReport*> rows;
  for (DatasetId e : m.eval_datasets) {
    if (const EvalReport* r = m.Cell(e, e)) rows.push_back(r);
    for (DatasetId t : m.train_datasets) {
      if (t == e) continue;
      if (const EvalReport* r = m.Cell(t, e)) rows.push_back(r);
    }
  }
  return rows;
}

}  // namespace

std::string RenderTransferMarkdown(const TransferMatrix& m) {
  std::ostringstream out;
  const std::vector<const EvalReport*> rows = TransferRows(m);

  // Best displayed value per (eval dataset, element, metric), compared at the
  // printed precision so ties bold together.
  std::map<std::tuple<DatasetId, std::size_t, std::size_t>, std::string> best;
  for (const EvalReport* r : rows) {
    for (const ElementReport& er : r->elements) {
      if (!er.displayed) continue;
      auto vals = MetricValues(er);
      for (std::size_t k = 0; k < vals.size(); ++k) {
        auto key = std::make_tuple(r->eval_dataset, Index(er.element), k);
        const std::string v = Fixed2(vals[k]);
        auto it = best.find(key);
        if (it == best.end() || std::stod(v) > std::stod(it->second)) best[key] = v;
      }
    }
  }

  out << "| Setting | Model |";
  for (ElementKind e : kAllElements) {
    for (std::string_view lbl : kMetricLabels) out << ' ' << ElementTitle(e) << ' ' << lbl << " |";
  }
  out << "\n|---|---|";
  for (std::size_t i = 0; i < kNumElements * kMetricLabels.size(); ++i) out << "---:|";
  out << '\n';
  for (const EvalReport* r : rows) {
    out << "| " << TransferRowLabel(*r) << " | " << MarkdownCell(r->model_id) << " |";
    for (const ElementReport& er : r->elements) {
      auto vals = MetricValues(er);
      for (std::size_t k = 0; k < vals.size(); ++k) {
        if (!er.displayed) {
          out << " — |";
          continue;
        }
        const std::string v = Fixed2(vals[k]);
        const bool is_best = best[std::make_tuple(r->eval_dataset, Index(er.element), k)] == v;
        out << ' ' << (is_best ? "**" + v + "**" : v) << " |";
      }
    }
    out << '\n';
  }

  out << "\n| Train \\ Eval |";
  for (DatasetId e : m.eval_datasets) out << ' ' << DatasetShortName(e) << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < m.eval_datasets.size(); ++i) out << "---|";
  out << '\n';
  for (DatasetId t : m.train_datasets) {
    out << "| " << DatasetShortName(t) << " |";
    for (DatasetId e : m.eval_datasets) {
      const EvalReport* r = m.Cell(t, e);
      out << ' ' << (r ? MarkdownCell(r->run_id.empty() ? r->model_id : r->run_id) : "(empty)")
          << " |";
    }
    out << '\n';
  }
  const auto empty = m.EmptyCells();
  if (!empty.empty()) {
    out << "\nEmpty cells:";
    for (const auto& [t, e] : empty) {
      out << ' ' << DatasetShortName(t) << "->" << DatasetShortName(e);
    }
    out << '\n';
  }
  out << "\nBold marks the best value among rows evaluated on the same dataset. "
      << kValidityNote << '\n';
  return out.str();
}

std::string RenderTransferCsv(const TransferMatrix& m) {
  std::ostringstream out;
  out << "train_dataset,eval_dataset,cell,label,run_id,model,articles";
  for (ElementKind e : kAllElements) {
    const std::string n(ElementName(e));
    out << ',' << n << "_valid," << n << "_displayed," << n << "_r1," << n << "_r2," << n
        << "_rl," << n << "_b4";
  }
  out << '\n';
  for (DatasetId t : m.train_datasets) {
    for (DatasetId e : m.eval_datasets) {
      out << DatasetTag(t) << ',' << DatasetTag(e) << ',';
      const EvalReport* r = m.Cell(t, e);
      if (r == nullptr) {
        out << "empty,,,,";
        for (std::size_t i = 0; i < kNumElements * 6; ++i) out << ',';
        out << '\n';
        continue;
      }
      out << "filled," << CsvField(TransferRowLabel(*r)) << ',' << CsvField(r->run_id) << ','
          << CsvField(r->model_id) << ',' << r->article_count;
      for (const ElementReport& er : r->elements) {
        out << ',' << er.valid_count << ',' << (er.displayed ? "true" : "false");
        for (double v : MetricValues(er)) out << ',' << Fixed2(v);
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace fivew1h
