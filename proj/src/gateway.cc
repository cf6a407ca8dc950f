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

#include "fivew1h/gateway.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <optional>
#include <random>
#include <thread>
#include <unordered_set>
#include <variant>

#include "fivew1h/sft.h"
#include "fivew1h/text_util.h"

namespace fivew1h {
namespace {

std::string RequiredString(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw GatewayError(GatewayError::Kind::kConfig,
                       std::string(what) + ": \"" + key + "\" must be a string");
  }
  return it->get<std::string>();
}

bool LooksLikeContextLength(const std::string& body) {
  return body.find("context_length_exceeded") != std::string::npos ||
         body.find("maximum context length") != std::string::npos;
}

// Drops an interrupted trailing line so appends start on a fresh line.
void RepairLogTail(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return;
  std::string content = ReadFile(path);
  if (content.empty() || content.back() == '\n') return;
  std::size_t last_nl = content.rfind('\n');
  content.resize(last_nl == std::string::npos ? 0 : last_nl + 1);
  WriteFile(path, content);
}

}  // namespace

void DecodingParams::Validate() const {
  if (!(top_p > 0.0 && top_p <= 1.0)) {
    throw std::invalid_argument("top_p must lie in (0, 1]");
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw std::invalid_argument("temperature must be nonnegative");
  }
  if (max_tokens <= 0) throw std::invalid_argument("max_tokens must be positive");
}

EndpointConfig EndpointConfig::FromJson(const Json& json) {
  if (!json.is_object()) {
    throw GatewayError(GatewayError::Kind::kConfig, "endpoint config must be an object");
  }
  EndpointConfig c;
  c.name = RequiredString(json, "name", "endpoint config");
  c.base_url = RequiredString(json, "base_url", "endpoint config");
  c.model = RequiredString(json, "model", "endpoint config");
  if (auto it = json.find("api_key_env"); it != json.end() && !it->is_null()) {
    c.api_key_env = RequiredString(json, "api_key_env", "endpoint config");
  }
  return c;
}

EndpointConfig EndpointConfig::Load(const std::filesystem::path& path) {
  Json j = Json::parse(ReadFile(path), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw GatewayError(GatewayError::Kind::kConfig, path.string() + ": invalid JSON");
  }
  return FromJson(j);
}

Json ChatRequest::ToWireJson() const {
  Json message;
  message["role"] = "user";
  message["content"] = prompt;
  Json j;
  j["model"] = model;
  j["messages"] = Json::array({std::move(message)});
  j["top_p"] = params.top_p;
  j["temperature"] = params.temperature;
  j["max_tokens"] = params.max_tokens;
  return j;
}

std::string_view GatewayErrorClass(GatewayError::Kind kind) {
  switch (kind) {
    case GatewayError::Kind::kEndpointUnreachable: return "EndpointUnreachable";
    case GatewayError::Kind::kRateLimited: return "RateLimited";
    case GatewayError::Kind::kContextLengthExceeded: return "ContextLengthExceeded";
    case GatewayError::Kind::kHttpError: return "HttpError";
    case GatewayError::Kind::kBadResponse: return "BadResponse";
    case GatewayError::Kind::kFixtureMissingArticle: return "FixtureMissingArticle";
    case GatewayError::Kind::kConfig: return "ConfigError";
  }
  return "Unknown";
}

ReplayBackend::ReplayBackend(std::unordered_map<std::string, std::string> canned)
    : canned_(std::move(canned)) {}

std::unique_ptr<ReplayBackend> ReplayBackend::FromFile(
    const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> canned;
  std::vector<std::string> lines = SplitLines(ReadFile(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    Json j = Json::parse(lines[i], nullptr, /*allow_exceptions=*/false);
    const std::string where = path.string() + ":" + std::to_string(i + 1);
    if (j.is_discarded() || !j.is_object()) {
      throw GatewayError(GatewayError::Kind::kConfig, where + ": invalid JSON");
    }
    canned[RequiredString(j, "article_id", where.c_str())] =
        RequiredString(j, "raw_text", where.c_str());
  }
  return std::make_unique<ReplayBackend>(std::move(canned));
}

std::unique_ptr<ReplayBackend> ReplayBackend::EchoGold(
    std::span<const AnnotationRecord> records) {
  std::unordered_map<std::string, std::string> canned;
  for (const AnnotationRecord& r : records) {
    canned[r.id()] = SerializeElementMap(SortSpansByDocumentOrder(r.elements, r.article.text));
  }
  return std::make_unique<ReplayBackend>(std::move(canned));
}

ChatReply ReplayBackend::Send(const ChatRequest& request) {
  auto it = canned_.find(request.article_id);
  if (it == canned_.end()) {
    throw GatewayError(GatewayError::Kind::kFixtureMissingArticle,
                       "no canned response for article \"" + request.article_id + "\"");
  }
  ChatReply reply;
  reply.content = it->second;
  reply.finish_reason = "stop";
  return reply;
}

std::string EndpointRegistry::Register(std::string id,
                                       std::unique_ptr<ChatBackend> backend) {
  std::lock_guard<std::mutex> lock(mu_);
  backends_[id] = std::move(backend);
  return id;
}

ChatBackend& EndpointRegistry::Get(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = backends_.find(id);
  if (it == backends_.end()) {
    throw GatewayError(GatewayError::Kind::kConfig, "unknown endpoint \"" + id + "\"");
  }
  return *it->second;
}

bool EndpointRegistry::Contains(const std::string& id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return backends_.count(id) > 0;
}

std::string RegisterReplayBackend(EndpointRegistry& registry,
                                  const std::filesystem::path& fixture_path) {
  return registry.Register("replay:" + fixture_path.string(),
                           ReplayBackend::FromFile(fixture_path));
}

Json RawResponse::ToJson() const {
  Json j;
  j["article_id"] = article_id;
  j["endpoint_id"] = endpoint_id;
  j["raw_text"] = raw_text;
  j["finish_reason"] = finish_reason;
  j["latency_ms"] = latency_ms;
  j["timestamp"] = timestamp;
  j["attempts"] = attempts;
  j["checksum"] = checksum;
  return j;
}

RawResponse RawResponse::FromJson(const Json& json) {
  if (!json.is_object()) throw IoError("run log entry is not an object");
  auto str = [&](const char* key) {
    auto it = json.find(key);
    if (it == json.end() || !it->is_string()) {
      throw IoError(std::string("run log entry: \"") + key + "\" must be a string");
    }
    return it->get<std::string>();
  };
  RawResponse r;
  r.article_id = str("article_id");
  r.endpoint_id = str("endpoint_id");
  r.raw_text = str("raw_text");
  r.finish_reason = str("finish_reason");
  r.timestamp = str("timestamp");
  r.checksum = str("checksum");
  r.latency_ms = json.value("latency_ms", 0.0);
  r.attempts = json.value("attempts", 0);
  return r;
}

std::vector<RawResponse> ReadRunLog(const std::filesystem::path& path) {
  bool complete = true;
  std::vector<std::string> lines = SplitLines(ReadFile(path), &complete);
  if (!complete) lines.pop_back();
  std::vector<RawResponse> responses;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (Trim(lines[i]).empty()) continue;
    Json j = Json::parse(lines[i], nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) {
      throw IoError(path.string() + ":" + std::to_string(i + 1) + ": invalid JSON");
    }
    responses.push_back(RawResponse::FromJson(j));
  }
  return responses;
}

Json BatchManifest::ToJson() const {
  Json j;
  j["total"] = total;
  j["completed"] = completed;
  j["failed"] = failed;
  j["skipped"] = skipped;
  j["already_logged"] = already_logged;
  j["issued"] = issued;
  Json errors = Json::object();
  Json list = Json::array();
  for (const BatchFailure& f : failures) {
    errors[f.error_class] = errors.value(f.error_class, 0) + 1;
    list.push_back({{"article_id", f.article_id},
                    {"error_class", f.error_class},
                    {"message", f.message}});
  }
  j["errors_by_class"] = std::move(errors);
  j["failures"] = std::move(list);
  return j;
}

Gateway::Gateway(const EndpointRegistry& registry, RetryPolicy policy, SleepFn sleep)
    : registry_(registry), policy_(policy), sleep_(std::move(sleep)) {
  if (policy_.max_attempts < 1) policy_.max_attempts = 1;
  if (!sleep_) {
    sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

std::chrono::milliseconds Gateway::Backoff(int attempt) const {
  thread_local std::mt19937 rng{std::random_device{}()};
  double base = static_cast<double>(policy_.initial_backoff.count()) *
                std::pow(policy_.multiplier, attempt - 1);
  base = std::min(base, static_cast<double>(policy_.max_backoff.count()));
  std::uniform_real_distribution<double> factor(1.0 - policy_.jitter,
                                                1.0 + policy_.jitter);
  return std::chrono::milliseconds(static_cast<long long>(std::max(0.0, base * factor(rng))));
}

RawResponse Gateway::SendRequest(ExtractionRequest& request) const {
  request.params.Validate();
  ChatBackend& backend = registry_.Get(request.endpoint_id);
  ChatRequest chat;
  chat.model = backend.model();
  chat.prompt = request.prompt.text;
  chat.params = request.params;
  chat.article_id = request.article_id;

  std::string last_error;
  bool last_was_rate_limit = false;
  while (request.attempt < policy_.max_attempts) {
    ++request.attempt;
    const auto start = std::chrono::steady_clock::now();
    try {
      ChatReply reply = backend.Send(chat);
      const auto elapsed = std::chrono::steady_clock::now() - start;
      if (reply.status == 200) {
        RawResponse r;
        r.checksum = Sha256Hex(reply.content);
        r.article_id = request.article_id;
        r.raw_text = std::move(reply.content);
        r.latency_ms = std::chrono::duration<double, std::milli>(elapsed).count();
        r.endpoint_id = request.endpoint_id;
        r.finish_reason = std::move(reply.finish_reason);
        r.timestamp = UtcTimestampNow();
        r.attempts = request.attempt;
        return r;
      }
      if (reply.status == 429) {
        last_was_rate_limit = true;
        last_error = "HTTP 429";
      } else if (LooksLikeContextLength(reply.error_body)) {
        throw GatewayError(GatewayError::Kind::kContextLengthExceeded,
                           "prompt exceeds the endpoint context length");
      } else {
        throw GatewayError(GatewayError::Kind::kHttpError,
                           "HTTP " + std::to_string(reply.status) + ": " +
                               reply.error_body.substr(0, 200));
      }
    } catch (const TransportError& e) {
      last_was_rate_limit = false;
      last_error = e.what();
    }
    if (request.attempt < policy_.max_attempts) sleep_(Backoff(request.attempt));
  }
  if (last_was_rate_limit) {
    throw GatewayError(GatewayError::Kind::kRateLimited,
                       "rate limited after " + std::to_string(request.attempt) + " attempts");
  }
  throw GatewayError(GatewayError::Kind::kEndpointUnreachable,
                     "unreachable after " + std::to_string(request.attempt) +
                         " attempts: " + last_error);
}

BatchManifest Gateway::RunBatch(std::span<const ExtractionRequest> requests,
                                const BatchOptions& options) const {
  BatchManifest manifest;
  manifest.total = requests.size();

  std::unordered_set<std::string> done;
  if (options.resume && std::filesystem::exists(options.run_log)) {
    RepairLogTail(options.run_log);
    for (const RawResponse& r : ReadRunLog(options.run_log)) done.insert(r.article_id);
  }

  std::vector<ExtractionRequest> pending;
  for (const ExtractionRequest& req : requests) {
    if (done.count(req.article_id)) {
      ++manifest.already_logged;
    } else {
      done.insert(req.article_id);
      pending.push_back(req);
    }
  }

  JsonLinesWriter log(options.run_log, options.resume);
  manifest.issued = pending.size();
  if (pending.empty()) return manifest;

  using Outcome = std::variant<RawResponse, BatchFailure>;
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Outcome> queue;
  std::atomic<std::size_t> next{0};
  std::size_t finished = 0;

  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= pending.size()) return;
      ExtractionRequest& req = pending[i];
      Outcome outcome;
      try {
        outcome = SendRequest(req);
      } catch (const GatewayError& e) {
        outcome = BatchFailure{req.article_id, std::string(GatewayErrorClass(e.kind())),
                               e.what()};
      } catch (const std::exception& e) {
        outcome = BatchFailure{req.article_id, "InternalError", e.what()};
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        queue.push_back(std::move(outcome));
      }
      cv.notify_one();
    }
  };

  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min(options.max_in_flight, pending.size()));
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < n_workers; ++w) workers.emplace_back(worker);

  // This thread is the single log writer.
  std::optional<IoError> write_error;
  while (finished < pending.size()) {
    Outcome outcome;
    {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return !queue.empty(); });
      outcome = std::move(queue.front());
      queue.pop_front();
    }
    ++finished;
    if (auto* response = std::get_if<RawResponse>(&outcome)) {
      if (write_error) continue;
      try {
        log.Append(response->ToJson());
        ++manifest.completed;
      } catch (const IoError& e) {
        write_error = e;
      }
    } else {
      auto& failure = std::get<BatchFailure>(outcome);
      if (failure.error_class == GatewayErrorClass(GatewayError::Kind::kContextLengthExceeded)) {
        ++manifest.skipped;
      } else {
        ++manifest.failed;
      }
      manifest.failures.push_back(std::move(failure));
    }
  }
  for (std::thread& t : workers) t.join();
  if (write_error) throw *write_error;

  // Completion order varies with scheduling; keep the manifest stable.
  std::sort(manifest.failures.begin(), manifest.failures.end(),
            [](const BatchFailure& a, const BatchFailure& b) {
              return a.article_id < b.article_id;
            });
  return manifest;
}

}  // namespace fivew1h
