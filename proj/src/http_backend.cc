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

#include "fivew1h/http_backend.h"

#include <cstdlib>

#include "httplib.h"

namespace fivew1h {
namespace {

std::string ResolveApiKey(const EndpointConfig& config) {
  if (config.api_key_env.empty()) return "";
  const char* value = std::getenv(config.api_key_env.c_str());
  if (value == nullptr) {
    throw GatewayError(GatewayError::Kind::kConfig,
                       "environment variable " + config.api_key_env + " is not set");
  }
  return value;
}

}  // namespace

HttpChatBackend::HttpChatBackend(EndpointConfig config)
    : HttpChatBackend(config, ResolveApiKey(config)) {}

HttpChatBackend::HttpChatBackend(EndpointConfig config, std::string api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
  const std::string& url = config_.base_url;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw GatewayError(GatewayError::Kind::kConfig,
                       "base_url must include a scheme: " + url);
  }
  std::size_t path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  path_ = prefix + "/chat/completions";
}

ChatReply HttpChatBackend::Send(const ChatRequest& request) {
  // One client per call keeps Send() safe for concurrent use.
  httplib::Client client(origin_);
  client.set_connection_timeout(connect_timeout_);
  client.set_read_timeout(read_timeout_);
  client.set_write_timeout(read_timeout_);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

  const std::string body = DumpJson(request.ToWireJson());
  httplib::Result res = client.Post(path_, headers, body, "application/json");
  if (!res) {
    throw TransportError("request to " + origin_ + path_ +
                         " failed: " + httplib::to_string(res.error()));
  }

  ChatReply reply;
  reply.status = res->status;
  if (res->status != 200) {
    reply.error_body = res->body;
    return reply;
  }
  Json j = Json::parse(res->body, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw GatewayError(GatewayError::Kind::kBadResponse, "response body is not JSON");
  }
  try {
    const Json& choice = j.at("choices").at(0);
    reply.content = choice.at("message").at("content").get<std::string>();
    if (auto it = choice.find("finish_reason"); it != choice.end() && it->is_string()) {
      reply.finish_reason = it->get<std::string>();
    }
  } catch (const Json::exception& e) {
    throw GatewayError(GatewayError::Kind::kBadResponse,
                       std::string("unexpected response shape: ") + e.what());
  }
  return reply;
}

}  // namespace fivew1h
