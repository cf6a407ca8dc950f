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

#ifndef FIVEW1H_HTTP_BACKEND_H_
#define FIVEW1H_HTTP_BACKEND_H_

#include <chrono>
#include <memory>
#include <string>

#include "fivew1h/gateway.h"

namespace fivew1h {

// Chat-completions client. POSTs ChatRequest::ToWireJson() to
// `<base_url>/chat/completions` and reads choices[0].message.content.
class HttpChatBackend final : public ChatBackend {
 public:
  // Reads the credential from the environment variable named in the
  // config; throws GatewayError(kConfig) if it is named but unset.
  explicit HttpChatBackend(EndpointConfig config);
  HttpChatBackend(EndpointConfig config, std::string api_key);

  ChatReply Send(const ChatRequest& request) override;
  std::string model() const override { return config_.model; }

  void set_timeouts(std::chrono::seconds connect, std::chrono::seconds read) {
    connect_timeout_ = connect;
    read_timeout_ = read;
  }

 private:
  EndpointConfig config_;
  std::string api_key_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // path prefix + /chat/completions
  std::chrono::seconds connect_timeout_{10};
  std::chrono::seconds read_timeout_{600};
};

}  // namespace fivew1h

#endif  // FIVEW1H_HTTP_BACKEND_H_
