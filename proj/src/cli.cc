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

#include "fivew1h/cli.h"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "CLI11.hpp"
#include "fivew1h/corpus.h"
#include "fivew1h/gateway.h"
#include "fivew1h/http_backend.h"
#include "fivew1h/io.h"
#include "fivew1h/prompting.h"
#include "fivew1h/report.h"
#include "fivew1h/response_parser.h"
#include "fivew1h/sft.h"
#include "fivew1h/text_metrics.h"
#include "fivew1h/validator.h"

#ifndef FIVEW1H_VERSION
#define FIVEW1H_VERSION "0.0.0"
#endif

namespace fivew1h {
namespace fs = std::filesystem;
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options that never change what a subcommand writes.
const std::set<std::string> kUnhashedOptions = {"help", "config", "out", "force", "resume"};

Json EffectiveConfig(const CLI::App& sub) {
  Json j = Json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    std::string name = opt->get_name();
    name.erase(0, name.find_first_not_of('-'));
    if (name.empty() || kUnhashedOptions.count(name)) continue;
    if (opt->count() > 0) {
      j[name] = opt->results();
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

// One output directory, its manifest and the idempotence check.
class Job {
 public:
  Job(const CLI::App& sub, fs::path dir, std::vector<fs::path> inputs,
      std::vector<std::string> outputs, std::optional<std::uint64_t> seed)
      : subcommand_(sub.get_name()),
        dir_(std::move(dir)),
        inputs_(std::move(inputs)),
        outputs_(std::move(outputs)),
        seed_(seed),
        started_(UtcTimestampNow()) {
    config_ = EffectiveConfig(sub);
    Json hashed;
    hashed["subcommand"] = subcommand_;
    hashed["config"] = config_;
    Json in = Json::array();
    for (const fs::path& p : inputs_) {
      const std::string sha = Sha256Hex(ReadFile(p));
      input_hashes_.push_back(sha);
      in.push_back(sha);
    }
    hashed["inputs"] = std::move(in);
    hashed["version"] = ToolVersion();
    hash_ = Sha256Hex(DumpJson(hashed));
  }

  fs::path Output(std::string_view name) const { return dir_ / std::string(name); }

  // Returns the recorded exit status when the directory is already up to
  // date. Throws UsageError when it holds outputs of another configuration.
  std::optional<int> CheckExisting(bool force, bool resume = false) const {
    const fs::path manifest = dir_ / "manifest.json";
    if (fs::exists(manifest)) {
      Json m = Json::parse(ReadFile(manifest), nullptr, false);
      const bool same = !m.is_discarded() && m.is_object() && m.value("config_hash", "") == hash_;
      if (same && !force) {
        const bool complete = std::all_of(outputs_.begin(), outputs_.end(),
                                          [&](const std::string& o) { return fs::exists(Output(o)); });
        if (complete && !resume) {
          std::cout << dir_.string() << ": up to date (config " << hash_.substr(0, 12) << ")\n";
          return m.value("exit_status", kExitOk);
        }
        if (complete && resume && m.value("exit_status", kExitOk) == kExitOk) {
          std::cout << dir_.string() << ": up to date (config " << hash_.substr(0, 12) << ")\n";
          return kExitOk;
        }
        return std::nullopt;
      }
      if (!same && !force) {
        throw UsageError(dir_.string() +
                         " holds outputs of a different configuration; pass --force to overwrite");
      }
      return std::nullopt;
    }
    if (!force && !resume) {
      for (const std::string& o : outputs_) {
        if (fs::exists(Output(o))) {
          throw UsageError(Output(o).string() +
                           " exists without a manifest; pass --force to overwrite");
        }
      }
    }
    return std::nullopt;
  }

  void Prepare() const { fs::create_directories(dir_); }

  int Finish(int status) const {
    Json m;
    m["tool"] = "fivew1h";
    m["version"] = ToolVersion();
    m["subcommand"] = subcommand_;
    m["config_hash"] = hash_;
    m["config"] = config_;
    Json in = Json::array();
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      in.push_back({{"path", inputs_[i].string()}, {"sha256", input_hashes_[i]}});
    }
    m["inputs"] = std::move(in);
    Json out = Json::array();
    for (const std::string& o : outputs_) out.push_back(Output(o).string());
    m["outputs"] = std::move(out);
    m["seed"] = seed_ ? Json(*seed_) : Json(nullptr);
    m["started_at"] = started_;
    m["finished_at"] = UtcTimestampNow();
    m["exit_status"] = status;
    WriteFile(dir_ / "manifest.json", DumpJsonPretty(m) + "\n");
    return status;
  }

 private:
  std::string subcommand_;
  fs::path dir_;
  std::vector<fs::path> inputs_;
  std::vector<std::string> outputs_;
  std::optional<std::uint64_t> seed_;
  std::string started_;
  Json config_;
  std::vector<std::string> input_hashes_;
  std::string hash_;
};

std::optional<DatasetId> OptionalDataset(const std::string& tag) {
  if (tag.empty()) return std::nullopt;
  auto d = ParseDatasetTag(tag);
  if (!d) throw UsageError("unknown dataset \"" + tag + "\" (cnndm, xsum, nyt, ramds)");
  return d;
}

std::vector<AnnotationRecord> LoadAll(const std::vector<std::string>& paths,
                                      std::optional<DatasetId> expected = std::nullopt) {
  std::vector<AnnotationRecord> all;
  std::unordered_set<std::string> seen;
  for (const std::string& p : paths) {
    for (AnnotationRecord& r : LoadCorpus(p, expected)) {
      if (!seen.insert(r.id()).second) {
        throw CorpusError(CorpusError::Kind::kDuplicateArticleId, std::nullopt,
                          "article id " + r.id() + " appears in more than one corpus");
      }
      all.push_back(std::move(r));
    }
  }
  return all;
}

SplitRatios ParseRatios(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("bad ratio \"" + part + "\"");
    }
  }
  if (v.size() != 3) throw UsageError("--ratios needs three comma-separated values");
  return {v[0], v[1], v[2]};
}

std::vector<fs::path> AsPaths(const std::vector<std::string>& paths) {
  return {paths.begin(), paths.end()};
}

std::vector<AnnotationRecord> SelectIds(const std::vector<AnnotationRecord>& records,
                                        const std::vector<std::string>& ids,
                                        const std::string& part) {
  std::unordered_map<std::string, const AnnotationRecord*> by_id;
  for (const AnnotationRecord& r : records) by_id.emplace(r.id(), &r);
  std::vector<AnnotationRecord> out;
  for (const std::string& id : ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw CorpusError(CorpusError::Kind::kMalformedRecord, std::nullopt,
                        "split " + part + " id " + id + " is not in the corpus");
    }
    out.push_back(*it->second);
  }
  return out;
}

struct Settings {
  std::string out;
  bool force = false;

  std::vector<std::string> corpus;
  std::string dataset;
  bool no_verbatim = false;
  bool no_uniqueness = false;
  bool allow_all_empty = false;

  std::uint64_t seed = 0;
  std::string ratios = "0.8,0.1,0.1";
  std::vector<std::string> merge_extra;

  std::string split;
  std::string instruction{kDefaultInstruction};
  std::size_t truncation = kDefaultTruncationTokens;
  std::size_t max_output_tokens = kDefaultMaxOutputTokens;
  std::size_t source_max_len = 0;
  std::size_t target_max_len = 0;

  std::string endpoint;
  std::string replay;
  std::string mode = "zero-shot";
  std::size_t k = 5;
  std::string part = "test";
  std::string prompt_template;
  std::size_t max_in_flight = 4;
  double top_p = 0.95;
  double temperature = 0.7;
  int max_tokens = 2000;
  bool resume = false;

  std::string responses;
  std::string parsed;
  std::string match = "concat";
  std::string candidate;
  std::string reference;

  std::string scores;
  std::string model;
  std::string run_id;
  std::string train_dataset;
  std::size_t threshold = 80;
  double threshold_fraction = 0.8;
  std::string invalid_policy = "exclude";

  std::vector<std::string> reports;
};

int DoValidate(const CLI::App& sub, const Settings& s) {
  Job job(sub, s.out, AsPaths(s.corpus), {"validation.json", "validation.txt"}, std::nullopt);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  ValidationPolicy policy;
  policy.verbatim = !s.no_verbatim;
  policy.uniqueness = !s.no_uniqueness;
  policy.allow_all_empty = s.allow_all_empty;
  std::vector<AnnotationRecord> records = LoadAll(s.corpus, OptionalDataset(s.dataset));
  ValidationReport report = ValidateCorpus(records, policy);
  job.Prepare();
  WriteFile(job.Output("validation.json"), DumpJsonPretty(ReportToJson(report)) + "\n");
  const std::string text = FormatReport(report);
  WriteFile(job.Output("validation.txt"), text);
  std::cout << text;
  return job.Finish(report.pass ? kExitOk : kExitValidationFailed);
}

int DoStats(const CLI::App& sub, const Settings& s) {
  Job job(sub, s.out, AsPaths(s.corpus), {"stats.json", "stats.txt"}, std::nullopt);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  const std::optional<DatasetId> dataset = OptionalDataset(s.dataset);
  std::vector<AnnotationRecord> records = LoadAll(s.corpus, dataset);
  CorpusStats stats = ComputeCorpusStats(records);
  job.Prepare();
  WriteFile(job.Output("stats.json"), DumpJsonPretty(StatsToJson(stats, dataset)) + "\n");
  const std::string text = FormatStats(stats, dataset);
  WriteFile(job.Output("stats.txt"), text);
  std::cout << text;
  return job.Finish(kExitOk);
}

int DoSplit(const CLI::App& sub, const Settings& s) {
  std::vector<std::string> inputs = s.corpus;
  inputs.insert(inputs.end(), s.merge_extra.begin(), s.merge_extra.end());
  Job job(sub, s.out, AsPaths(inputs), {"split.json"}, s.seed);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  const SplitRatios ratios = ParseRatios(s.ratios);
  std::vector<AnnotationRecord> records = LoadAll(s.corpus, OptionalDataset(s.dataset));
  std::vector<AnnotationRecord> extra = LoadAll(s.merge_extra);
  SplitAssignment split = SplitDataset(records, ratios, s.seed, extra);
  job.Prepare();
  WriteFile(job.Output("split.json"), DumpJsonPretty(SplitToJson(split)) + "\n");
  std::cout << "train " << split.train.size() << ", validation " << split.validation.size()
            << ", test " << split.test.size() << "\n";
  return job.Finish(kExitOk);
}

int DoExportSft(const CLI::App& sub, const Settings& s) {
  std::vector<std::string> inputs = s.corpus;
  inputs.push_back(s.split);
  Job job(sub, s.out,
          AsPaths(inputs), {"train.jsonl", "validation.jsonl", "test.jsonl", "export_warnings.json"},
          std::nullopt);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  std::vector<AnnotationRecord> records = LoadAll(s.corpus);
  const SplitAssignment split = SplitFromJson(Json::parse(ReadFile(s.split)));
  SftExportOptions options;
  options.instruction = s.instruction;
  options.truncation_limit = s.truncation;
  options.max_output_tokens = s.max_output_tokens;
  if (s.source_max_len > 0) options.source_max_len = s.source_max_len;
  if (s.target_max_len > 0) options.target_max_len = s.target_max_len;

  job.Prepare();
  Json warnings = Json::object();
  const std::pair<const char*, const std::vector<std::string>*> parts[] = {
      {"train", &split.train}, {"validation", &split.validation}, {"test", &split.test}};
  for (const auto& [name, ids] : parts) {
    std::vector<AnnotationRecord> subset = SelectIds(records, *ids, name);
    SftExportResult result =
        ExportSft(subset, job.Output(std::string(name) + ".jsonl"), options);
    warnings[name] = ExportResultToJson(result);
    std::cout << name << ": " << result.written << " records\n";
  }
  WriteFile(job.Output("export_warnings.json"), DumpJsonPretty(warnings) + "\n");
  return job.Finish(kExitOk);
}

int DoRun(const CLI::App& sub, const Settings& s) {
  std::vector<std::string> inputs = s.corpus;
  if (!s.split.empty()) inputs.push_back(s.split);
  if (!s.replay.empty()) inputs.push_back(s.replay);
  if (!s.endpoint.empty()) inputs.push_back(s.endpoint);
  if (!s.prompt_template.empty()) inputs.push_back(s.prompt_template);
  Job job(sub, s.out, AsPaths(inputs), {"prompts.jsonl", "responses.jsonl", "batch.json"}, s.seed);
  if (auto prior = job.CheckExisting(s.force, s.resume)) return *prior;

  std::vector<AnnotationRecord> records = LoadAll(s.corpus);
  std::optional<SplitAssignment> split;
  if (!s.split.empty()) split = SplitFromJson(Json::parse(ReadFile(s.split)));

  PromptSpec spec;
  spec.mode = s.mode == "few-shot" ? PromptMode::kFewShot : PromptMode::kZeroShot;
  spec.k = s.k;
  spec.seed = s.seed;
  spec.instruction = s.instruction;
  spec.truncation_limit = s.truncation;
  if (!s.prompt_template.empty()) spec.template_text = LoadPromptTemplate(s.prompt_template);
  CheckTemplate(spec.template_text, spec.mode);

  std::vector<AnnotationRecord> targets;
  if (s.part == "all") {
    targets = records;
  } else {
    if (!split) throw UsageError("--part " + s.part + " needs --split");
    targets = SelectIds(records, s.part == "test" ? split->test : split->validation, s.part);
  }
  std::vector<AnnotationRecord> train;
  if (spec.mode == PromptMode::kFewShot) {
    if (!split) throw UsageError("few-shot prompting needs --split for its exemplars");
    train = SelectIds(records, split->train, "train");
  }

  DecodingParams params;
  params.top_p = s.top_p;
  params.temperature = s.temperature;
  params.max_tokens = s.max_tokens;
  try {
    params.Validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  EndpointRegistry registry;
  std::string endpoint_id;
  if (!s.replay.empty()) {
    endpoint_id = RegisterReplayBackend(registry, s.replay);
  } else {
    EndpointConfig config = EndpointConfig::Load(s.endpoint);
    endpoint_id = registry.Register(config.name, std::make_unique<HttpChatBackend>(config));
  }

  std::vector<ExtractionRequest> requests;
  std::string prompt_log;
  for (const AnnotationRecord& r : targets) {
    ExtractionRequest req;
    req.article_id = r.id();
    req.prompt = BuildPrompt(spec, r.article, train);
    req.params = params;
    req.endpoint_id = endpoint_id;
    prompt_log += DumpJson({{"article_id", r.id()},
                            {"exemplar_ids", req.prompt.exemplar_ids},
                            {"prompt", req.prompt.text}});
    prompt_log += '\n';
    requests.push_back(std::move(req));
  }

  job.Prepare();
  WriteFile(job.Output("prompts.jsonl"), prompt_log);
  BatchOptions options;
  options.max_in_flight = s.max_in_flight;
  options.run_log = job.Output("responses.jsonl");
  options.resume = s.resume;
  Gateway gateway(registry);
  BatchManifest manifest = gateway.RunBatch(requests, options);
  WriteFile(job.Output("batch.json"), DumpJsonPretty(manifest.ToJson()) + "\n");
  std::cout << "completed " << manifest.completed << ", failed " << manifest.failed
            << ", skipped " << manifest.skipped << ", already logged "
            << manifest.already_logged << " of " << manifest.total << "\n";
  for (const BatchFailure& f : manifest.failures) {
    std::cerr << f.article_id << ": " << f.error_class << ": " << f.message << "\n";
  }
  return job.Finish(manifest.failed > 0 ? kExitFailure : kExitOk);
}

int DoParse(const CLI::App& sub, const Settings& s) {
  Job job(sub, s.out, {fs::path(s.responses)}, {"parsed.jsonl", "parse_summary.json"},
          std::nullopt);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  std::vector<ParsedExtraction> parsed;
  for (const RawResponse& raw : ReadRunLog(s.responses)) parsed.push_back(ParseResponse(raw));
  // The run log is in completion order; sort so output depends only on content.
  std::stable_sort(parsed.begin(), parsed.end(),
                   [](const ParsedExtraction& a, const ParsedExtraction& b) {
                     return a.article_id < b.article_id;
                   });
  for (std::size_t i = 1; i < parsed.size(); ++i) {
    if (parsed[i].article_id == parsed[i - 1].article_id) {
      throw IoError("article " + parsed[i].article_id + " appears twice in " + s.responses);
    }
  }
  job.Prepare();
  WriteParsedRun(job.Output("parsed.jsonl"), parsed);

  Json summary;
  summary["responses"] = parsed.size();
  Json modes = Json::object();
  for (ParseMode m : {ParseMode::kStrictJson, ParseMode::kFencedJson,
                      ParseMode::kKeyLineFallback, ParseMode::kUnparsed}) {
    modes[std::string(ParseModeName(m))] = std::count_if(
        parsed.begin(), parsed.end(), [m](const ParsedExtraction& p) { return p.mode == m; });
  }
  summary["modes"] = std::move(modes);
  Json valid = Json::object();
  const ValidityCounts counts = ValiditySummary(parsed);
  for (ElementKind e : kAllElements) valid[std::string(ElementName(e))] = counts[Index(e)];
  summary["valid"] = std::move(valid);
  summary["validity_definition"] = "non-empty answer after parsing";
  WriteFile(job.Output("parse_summary.json"), DumpJsonPretty(summary) + "\n");
  std::cout << "parsed " << parsed.size() << " responses\n";
  return job.Finish(kExitOk);
}

int DoScorePair(const Settings& s) {
  const TokenSeq cand = NormalizeTokens(s.candidate);
  const TokenSeq ref = NormalizeTokens(s.reference);
  Json j = ScorePair(cand, ref).ToJson();
  const BleuBreakdown b = Bleu4Detailed(cand, std::span<const TokenSeq>(&ref, 1));
  j["bleu4_precisions"] = b.precisions;
  j["bleu4_brevity_penalty"] = b.brevity_penalty;
  j["candidate_tokens"] = cand.tokens();
  j["reference_tokens"] = ref.tokens();
  std::cout << DumpJsonPretty(j) << "\n";
  return kExitOk;
}

int DoScore(const CLI::App& sub, const Settings& s) {
  const bool pair_mode = sub.count("--candidate") > 0 || sub.count("--reference") > 0;
  if (pair_mode) {
    if (sub.count("--candidate") == 0 || sub.count("--reference") == 0) {
      throw UsageError("single-pair scoring needs both --candidate and --reference");
    }
    return DoScorePair(s);
  }
  if (s.parsed.empty() || s.corpus.empty() || s.out.empty()) {
    throw UsageError("score needs --parsed, --corpus and --out (or --candidate/--reference)");
  }
  std::vector<std::string> inputs = s.corpus;
  inputs.insert(inputs.begin(), s.parsed);
  Job job(sub, s.out, AsPaths(inputs), {"scores.jsonl"}, std::nullopt);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  std::vector<ParsedExtraction> parsed = ReadParsedRun(s.parsed);
  std::vector<AnnotationRecord> gold = LoadAll(s.corpus);
  const MatchMode mode = s.match == "best-match" ? MatchMode::kBestMatch : MatchMode::kConcat;
  std::vector<ArticleScores> scores = ScoreRun(parsed, gold, mode);
  job.Prepare();
  WriteScores(job.Output("scores.jsonl"), scores);
  std::cout << "scored " << scores.size() << " articles\n";
  return job.Finish(kExitOk);
}

int DoReport(const CLI::App& sub, const Settings& s) {
  Job job(sub, s.out, {fs::path(s.scores)},
          {"report.md", "report.csv", "report.json", "valid_counts.csv"}, std::nullopt);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  ReportMeta meta;
  meta.model_id = s.model;
  meta.eval_dataset = *OptionalDataset(s.dataset);
  meta.train_dataset =
      s.train_dataset.empty() ? meta.eval_dataset : *OptionalDataset(s.train_dataset);
  meta.run_id = s.run_id.empty() ? s.model + "@" + std::string(DatasetTag(meta.eval_dataset))
                                 : s.run_id;
  const ValidThreshold threshold = sub.count("--threshold-fraction") > 0
                                       ? ValidThreshold::Fraction(s.threshold_fraction)
                                       : ValidThreshold::Absolute(s.threshold);
  const InvalidPolicy policy = *ParseInvalidPolicy(s.invalid_policy);
  std::vector<ArticleScores> scores = ReadScores(s.scores);
  EvalReport report = AggregateScores(scores, meta, threshold, policy);
  job.Prepare();
  WriteFile(job.Output("report.md"), RenderTable(report, TableFormat::kMarkdown));
  WriteFile(job.Output("report.csv"), RenderTable(report, TableFormat::kCsv));
  WriteFile(job.Output("report.json"), DumpJsonPretty(EvalReportToJson(report)) + "\n");
  WriteFile(job.Output("valid_counts.csv"),
            RenderValidCounts(std::span<const EvalReport>(&report, 1)));
  std::cout << RenderTable(report, TableFormat::kMarkdown);
  return job.Finish(kExitOk);
}

int DoTransfer(const CLI::App& sub, const Settings& s) {
  Job job(sub, s.out, AsPaths(s.reports), {"transfer.md", "transfer.csv"}, std::nullopt);
  if (auto prior = job.CheckExisting(s.force)) return *prior;
  std::vector<EvalReport> reports;
  for (const std::string& p : s.reports) {
    Json j = Json::parse(ReadFile(p), nullptr, false);
    if (j.is_discarded()) throw IoError(p + ": not JSON");
    reports.push_back(EvalReportFromJson(j));
  }
  TransferMatrix matrix = BuildTransferMatrix(reports);
  job.Prepare();
  const std::string md = RenderTransferMarkdown(matrix);
  WriteFile(job.Output("transfer.md"), md);
  WriteFile(job.Output("transfer.csv"), RenderTransferCsv(matrix));
  std::cout << md;
  return job.Finish(kExitOk);
}

void AddOut(CLI::App* sub, Settings& s, bool required = true) {
  auto* opt = sub->add_option("--out", s.out, "Output directory (holds manifest.json)");
  if (required) opt->required();
  sub->add_flag("--force", s.force, "Overwrite outputs of a different configuration");
}

void AddCorpus(CLI::App* sub, Settings& s, bool required = true) {
  auto* opt = sub->add_option("--corpus", s.corpus, "Annotated corpus JSON Lines (repeatable)");
  if (required) opt->required();
}

const std::vector<std::string> kDatasetTags = {"cnndm", "xsum", "nyt", "ramds"};

}  // namespace

std::string ToolVersion() { return FIVEW1H_VERSION; }

int RunCli(int argc, char** argv) {
  Settings s;
  CLI::App app{"5W1H extraction toolkit: corpus validation, SFT export, model runs, "
               "response parsing, scoring and reports",
               "fivew1h"};
  app.set_version_flag("--version", ToolVersion());
  app.set_config("--config", "", "Key-value config file; command-line flags take precedence");
  app.require_subcommand(1);

  CLI::App* validate = app.add_subcommand("validate", "Check annotation rules");
  AddCorpus(validate, s);
  validate->add_option("--dataset", s.dataset, "Expected dataset tag")
      ->check(CLI::IsMember(kDatasetTags));
  validate->add_flag("--no-verbatim", s.no_verbatim, "Skip the verbatim-span check");
  validate->add_flag("--no-uniqueness", s.no_uniqueness, "Skip the cross-element check");
  validate->add_flag("--allow-all-empty", s.allow_all_empty,
                     "Accept records with no spans at all");
  AddOut(validate, s);

  CLI::App* stats = app.add_subcommand("stats", "Corpus statistics");
  AddCorpus(stats, s);
  stats->add_option("--dataset", s.dataset, "Dataset tag")->check(CLI::IsMember(kDatasetTags));
  AddOut(stats, s);

  CLI::App* split = app.add_subcommand("split", "Seeded train/validation/test split");
  AddCorpus(split, s);
  split->add_option("--dataset", s.dataset, "Expected dataset tag")
      ->check(CLI::IsMember(kDatasetTags));
  split->add_option("--seed", s.seed, "Permutation seed")->capture_default_str();
  split->add_option("--ratios", s.ratios, "train,validation,test")->capture_default_str();
  split->add_option("--merge-extra", s.merge_extra,
                    "Corpus added to train only (repeatable)");
  AddOut(split, s);

  CLI::App* export_sft = app.add_subcommand("export-sft", "Write SFT JSON Lines per split part");
  AddCorpus(export_sft, s);
  export_sft->add_option("--split", s.split, "split.json")->required();
  export_sft->add_option("--instruction", s.instruction, "Instruction text")
      ->capture_default_str();
  export_sft->add_option("--truncation", s.truncation, "Article token limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  export_sft->add_option("--max-output-tokens", s.max_output_tokens, "Output budget warning")
      ->capture_default_str();
  export_sft->add_option("--source-max-len", s.source_max_len, "Flag inputs above this length");
  export_sft->add_option("--target-max-len", s.target_max_len, "Flag outputs above this length");
  AddOut(export_sft, s);

  CLI::App* run = app.add_subcommand("run", "Build prompts and query a model");
  AddCorpus(run, s);
  run->add_option("--split", s.split, "split.json");
  auto* endpoint = run->add_option("--endpoint", s.endpoint, "Endpoint config JSON");
  auto* replay = run->add_option("--replay", s.replay, "Replay fixture JSON Lines");
  endpoint->excludes(replay);
  replay->excludes(endpoint);
  run->add_option("--mode", s.mode, "zero-shot or few-shot")
      ->capture_default_str()
      ->check(CLI::IsMember({"zero-shot", "few-shot"}));
  run->add_option("--k", s.k, "Exemplars for few-shot")->capture_default_str();
  run->add_option("--seed", s.seed, "Exemplar selection seed")->capture_default_str();
  run->add_option("--part", s.part, "test, validation or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"test", "validation", "all"}));
  run->add_option("--prompt-template", s.prompt_template, "Prompt template file");
  run->add_option("--instruction", s.instruction, "Instruction text")->capture_default_str();
  run->add_option("--truncation", s.truncation, "Article token limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--max-in-flight", s.max_in_flight, "Concurrent requests")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--top-p", s.top_p, "Nucleus sampling")->capture_default_str();
  run->add_option("--temperature", s.temperature, "Sampling temperature")->capture_default_str();
  run->add_option("--max-tokens", s.max_tokens, "Generation limit")->capture_default_str();
  run->add_flag("--resume", s.resume, "Continue an interrupted run log");
  AddOut(run, s);

  CLI::App* parse = app.add_subcommand("parse", "Parse raw responses into element maps");
  parse->add_option("--responses", s.responses, "responses.jsonl")->required();
  AddOut(parse, s);

  CLI::App* score = app.add_subcommand("score", "Score parsed responses against gold");
  score->add_option("--parsed", s.parsed, "parsed.jsonl");
  AddCorpus(score, s, /*required=*/false);
  score->add_option("--match", s.match, "concat or best-match")
      ->capture_default_str()
      ->check(CLI::IsMember({"concat", "best-match"}));
  score->add_option("--candidate", s.candidate, "Score one candidate text");
  score->add_option("--reference", s.reference, "Reference for --candidate");
  AddOut(score, s, /*required=*/false);

  CLI::App* report = app.add_subcommand("report", "Aggregate scores into report tables");
  report->add_option("--scores", s.scores, "scores.jsonl")->required();
  report->add_option("--model", s.model, "Model label")->required();
  report->add_option("--run-id", s.run_id, "Run label (default model@dataset)");
  report->add_option("--dataset", s.dataset, "Evaluation dataset tag")
      ->required()
      ->check(CLI::IsMember(kDatasetTags));
  report->add_option("--train-dataset", s.train_dataset, "Fine-tuning dataset tag")
      ->check(CLI::IsMember(kDatasetTags));
  auto* abs = report->add_option("--threshold", s.threshold,
                                 "Display elements with more valid responses than this")
                  ->capture_default_str();
  auto* frac = report->add_option("--threshold-fraction", s.threshold_fraction,
                                  "Threshold as a fraction of the article count")
                   ->check(CLI::Range(0.0, 1.0));
  abs->excludes(frac);
  frac->excludes(abs);
  report->add_option("--invalid-policy", s.invalid_policy, "exclude or zero")
      ->capture_default_str()
      ->check(CLI::IsMember({"exclude", "zero"}));
  AddOut(report, s);

  CLI::App* transfer = app.add_subcommand("transfer", "Cross-dataset transfer matrix");
  transfer->add_option("--report", s.reports, "report.json (repeatable)")->required();
  AddOut(transfer, s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub == validate) return DoValidate(*sub, s);
    if (sub == stats) return DoStats(*sub, s);
    if (sub == split) return DoSplit(*sub, s);
    if (sub == export_sft) return DoExportSft(*sub, s);
    if (sub == run) {
      if (s.endpoint.empty() == s.replay.empty()) {
        throw UsageError("run needs exactly one of --endpoint or --replay");
      }
      return DoRun(*sub, s);
    }
    if (sub == parse) return DoParse(*sub, s);
    if (sub == score) return DoScore(*sub, s);
    if (sub == report) return DoReport(*sub, s);
    if (sub == transfer) return DoTransfer(*sub, s);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PromptError& e) {
    std::cerr << "prompt error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GatewayError& e) {
    std::cerr << GatewayErrorClass(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == GatewayError::Kind::kConfig ? kExitUsage : kExitFailure;
  } catch (const SftError& e) {
    std::cerr << "sft export: " << e.what() << "\n";
    return e.kind() == SftError::Kind::kValidationRequired ? kExitValidationFailed
                                                           : kExitFailure;
  } catch (const CorpusError& e) {
    std::cerr << "corpus error: " << e.what() << "\n";
    return e.kind() == CorpusError::Kind::kRatioSumInvalid ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

int RunCli(const std::vector<std::string>& args) {
  std::vector<std::string> copy = args;
  std::vector<char*> argv;
  for (std::string& a : copy) argv.push_back(a.data());
  argv.push_back(nullptr);
  return RunCli(static_cast<int>(copy.size()), argv.data());
}

}  // namespace fivew1h
