// Copyright 2026 The Forensa Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Completion client for the JSON wire protocol:
//   POST <endpoint>/complete
//   {"model","prompt","max_tokens","temperature","stop"?,"request_id"}
//   -> {"request_id","text","finish_reason"}
// Retries transport failures and 5xx with exponential backoff, never 4xx,
// and bounds the number of requests in flight.

#ifndef FORENSA_LLM_CLIENT_H_
#define FORENSA_LLM_CLIENT_H_

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "forensa/error.h"
#include "json.hpp"

namespace forensa {

struct CompletionRequest {
  std::string model;
  std::string prompt;
  int max_tokens = 512;
  double temperature = 0.0;
  std::optional<std::vector<std::string>> stop;
  std::string request_id;

  bool operator==(const CompletionRequest&) const = default;
};

enum class FinishReason { kStop, kLength, kError };

std::string_view ToString(FinishReason f);

struct CompletionResponse {
  std::string request_id;
  std::string text;
  FinishReason finish_reason = FinishReason::kStop;
  double latency_ms = 0.0;
};

nlohmann::json ToJson(const CompletionRequest& r);
// Throws ProtocolError.
CompletionRequest CompletionRequestFromJson(const nlohmann::json& j);

class TransportError : public Error {
 public:
  TransportError(std::string request_id, const std::string& what)
      : Error(ErrorCategory::kTransport, what), request_id_(std::move(request_id)) {}
  const std::string& request_id() const { return request_id_; }

 private:
  std::string request_id_;
};

// The server answered but the body violates the protocol.
class ProtocolError : public TransportError {
 public:
  using TransportError::TransportError;
};

// Checks the body against the protocol and the expected request_id.
CompletionResponse ParseCompletionResponse(std::string_view body,
                                           const std::string& request_id);

struct HttpResult {
  int status = 0;  // 0 when no response arrived
  std::string body;
  std::string error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  // Must be safe to call concurrently.
  virtual HttpResult Post(const std::string& body, const std::string& pair_id) = 0;
};

// HTTP transport. `base_url` is "http://host[:port][/prefix]".
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::string base_url,
                         std::chrono::milliseconds timeout = std::chrono::seconds(120));
  HttpResult Post(const std::string& body, const std::string& pair_id) override;

 private:
  std::string origin_;
  std::string path_;
  std::chrono::milliseconds timeout_;
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds base_delay{500};
  // Replaces std::this_thread::sleep_for when set.
  std::function<void(std::chrono::milliseconds)> sleeper;
};

class LlmClient {
 public:
  LlmClient(std::shared_ptr<Transport> transport, RetryPolicy policy,
            int max_in_flight);

  // Throws TransportError after exhausting retries or on 4xx, ProtocolError
  // on a malformed response, and Error(kUsage) on an invalid request.
  CompletionResponse Complete(const CompletionRequest& req,
                              const std::string& pair_id = {});

  int max_in_flight() const { return max_in_flight_; }

 private:
  std::shared_ptr<Transport> transport_;
  RetryPolicy policy_;
  int max_in_flight_;
  std::counting_semaphore<> gate_;
};

// "mock:<script.jsonl>" builds an in-process scripted endpoint; anything
// starting with http:// builds an HttpTransport. Throws Error(kUsage).
std::shared_ptr<Transport> MakeTransport(const std::string& endpoint);

}  // namespace forensa

#endif  // FORENSA_LLM_CLIENT_H_
