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

// Dispatches rendered prompts to chat-completions endpoints and records the
// raw replies.
//
// A backend is anything that answers a ChatRequest: a live HTTP endpoint
// (http_backend.h), a replay fixture, or a test double. Backends are
// registered under an endpoint id in an EndpointRegistry; the Gateway adds
// retry with exponential backoff and the resumable batch runner on top.
//
// Run logs are append-only JSON Lines of RawResponse. raw_text is stored
// exactly as received, with its SHA-256 taken at receipt.

#ifndef FIVEW1H_GATEWAY_H_
#define FIVEW1H_GATEWAY_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fivew1h/corpus.h"
#include "fivew1h/io.h"
#include "fivew1h/prompting.h"

namespace fivew1h {

struct DecodingParams {
  double top_p = 0.95;
  double temperature = 0.7;
  int max_tokens = 2000;

  // Throws std::invalid_argument when out of range.
  void Validate() const;
};

// {"name": ..., "base_url": ..., "model": ..., "api_key_env": ...}
struct EndpointConfig {
  std::string name;
  std::string base_url;
  std::string model;
  // Empty means the endpoint takes no credential.
  std::string api_key_env;

  static EndpointConfig FromJson(const Json& json);
  static EndpointConfig Load(const std::filesystem::path& path);
};

struct ChatRequest {
  std::string model;
  std::string prompt;
  DecodingParams params;
  // Routing metadata; never sent on the wire.
  std::string article_id;

  // {"model": ..., "messages": [{"role": "user", "content": ...}],
  //  "top_p": ..., "temperature": ..., "max_tokens": ...}
  Json ToWireJson() const;
};

struct ChatReply {
  int status = 200;
  std::string content;
  std::string finish_reason;
  // Response body for non-200 replies.
  std::string error_body;
};

// Connection-level failure. Always retried.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GatewayError : public std::runtime_error {
 public:
  enum class Kind {
    kEndpointUnreachable,
    kRateLimited,
    kContextLengthExceeded,
    kHttpError,
    kBadResponse,
    kFixtureMissingArticle,
    kConfig,
  };
  GatewayError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view GatewayErrorClass(GatewayError::Kind kind);

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // May throw TransportError (retryable) or GatewayError (permanent).
  // Must be safe to call from several threads at once.
  virtual ChatReply Send(const ChatRequest& request) = 0;
  virtual std::string model() const = 0;
};

// Canned replies keyed by article id; unknown ids fail with
// kFixtureMissingArticle.
class ReplayBackend final : public ChatBackend {
 public:
  explicit ReplayBackend(std::unordered_map<std::string, std::string> canned);

  // JSON Lines of {"article_id": ..., "raw_text": ...}.
  static std::unique_ptr<ReplayBackend> FromFile(const std::filesystem::path& path);
  // Echoes each record's canonical gold serialization.
  static std::unique_ptr<ReplayBackend> EchoGold(
      std::span<const AnnotationRecord> records);

  ChatReply Send(const ChatRequest& request) override;
  std::string model() const override { return "replay"; }
  std::size_t size() const { return canned_.size(); }

 private:
  std::unordered_map<std::string, std::string> canned_;
};

class EndpointRegistry {
 public:
  // Returns `id`. Replaces any backend already registered under it.
  std::string Register(std::string id, std::unique_ptr<ChatBackend> backend);
  // Throws GatewayError(kConfig) for unknown ids.
  ChatBackend& Get(const std::string& id) const;
  bool Contains(const std::string& id) const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<ChatBackend>> backends_;
};

// Registers a ReplayBackend for `fixture_path` and returns its endpoint id
// ("replay:<path>").
std::string RegisterReplayBackend(EndpointRegistry& registry,
                                  const std::filesystem::path& fixture_path);

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{8000};
  // Each delay is scaled by a uniform factor in [1 - jitter, 1 + jitter].
  double jitter = 0.25;
};

struct ExtractionRequest {
  std::string article_id;
  RenderedPrompt prompt;
  DecodingParams params;
  std::string endpoint_id;
  // Attempts made so far; never exceeds RetryPolicy::max_attempts.
  int attempt = 0;
};

struct RawResponse {
  std::string article_id;
  std::string raw_text;
  double latency_ms = 0.0;
  std::string endpoint_id;
  std::string finish_reason;
  std::string timestamp;
  // SHA-256 of raw_text taken when the reply arrived.
  std::string checksum;
  int attempts = 0;

  Json ToJson() const;
  static RawResponse FromJson(const Json& json);
};

// Parses a run log. A trailing line without '\n' (an interrupted write) is
// ignored.
std::vector<RawResponse> ReadRunLog(const std::filesystem::path& path);

struct BatchOptions {
  std::size_t max_in_flight = 4;
  std::filesystem::path run_log;
  // Keep the existing log and skip article ids already in it. Otherwise the
  // log is truncated.
  bool resume = false;
};

struct BatchFailure {
  std::string article_id;
  std::string error_class;
  std::string message;
};

// completed + failed + skipped + already_logged == total.
struct BatchManifest {
  std::size_t total = 0;
  std::size_t completed = 0;
  std::size_t failed = 0;
  // Requests rejected for context length; recorded, not fatal.
  std::size_t skipped = 0;
  std::size_t already_logged = 0;
  std::size_t issued = 0;
  std::vector<BatchFailure> failures;

  Json ToJson() const;
};

class Gateway {
 public:
  using SleepFn = std::function<void(std::chrono::milliseconds)>;

  explicit Gateway(const EndpointRegistry& registry, RetryPolicy policy = {},
                   SleepFn sleep = nullptr);

  // Retries transport failures and HTTP 429 with backoff. Throws
  // GatewayError once retries are exhausted or on a permanent failure.
  // Updates request.attempt.
  RawResponse SendRequest(ExtractionRequest& request) const;

  BatchManifest RunBatch(std::span<const ExtractionRequest> requests,
                         const BatchOptions& options) const;

 private:
  std::chrono::milliseconds Backoff(int attempt) const;

  const EndpointRegistry& registry_;
  RetryPolicy policy_;
  SleepFn sleep_;
};

}  // namespace fivew1h

#endif  // FIVEW1H_GATEWAY_H_
