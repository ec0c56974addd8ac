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

#include "forensa/llm_client.h"

#include <thread>

#include "forensa/mock_endpoint.h"
#include "httplib.h"

namespace forensa {

namespace {

bool Retryable(const HttpResult& r) { return r.status == 0 || r.status >= 500; }

std::string Describe(const HttpResult& r) {
  if (r.status == 0) return "no response" + (r.error.empty() ? "" : " (" + r.error + ")");
  return "HTTP " + std::to_string(r.status);
}

}  // namespace

std::string_view ToString(FinishReason f) {
  switch (f) {
    case FinishReason::kStop: return "stop";
    case FinishReason::kLength: return "length";
    case FinishReason::kError: return "error";
  }
  return "error";
}

nlohmann::json ToJson(const CompletionRequest& r) {
  nlohmann::json j = {
      {"model", r.model},
      {"prompt", r.prompt},
      {"max_tokens", r.max_tokens},
      {"temperature", r.temperature},
  };
  if (r.stop) j["stop"] = *r.stop;
  j["request_id"] = r.request_id;
  return j;
}

CompletionRequest CompletionRequestFromJson(const nlohmann::json& j) {
  const std::string id = j.is_object() ? j.value("request_id", std::string()) : "";
  try {
    CompletionRequest r;
    r.model = j.at("model").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.max_tokens = j.at("max_tokens").get<int>();
    r.temperature = j.at("temperature").get<double>();
    if (j.contains("stop") && !j["stop"].is_null()) {
      r.stop = j["stop"].get<std::vector<std::string>>();
    }
    r.request_id = j.at("request_id").get<std::string>();
    if (r.max_tokens < 1 || !(r.temperature >= 0.0)) {
      throw ProtocolError(id, "request " + id + ": max_tokens < 1 or temperature < 0");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(id, "malformed request " + id + ": " + e.what());
  }
}

CompletionResponse ParseCompletionResponse(std::string_view body,
                                           const std::string& request_id) {
  const auto fail = [&](const std::string& why) {
    return ProtocolError(request_id, "protocol error for request " + request_id + ": " + why);
  };
  const nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw fail("response is not a JSON object");
  CompletionResponse r;
  try {
    r.request_id = j.at("request_id").get<std::string>();
    r.text = j.at("text").get<std::string>();
    const auto reason = j.at("finish_reason").get<std::string>();
    if (reason == "stop") {
      r.finish_reason = FinishReason::kStop;
    } else if (reason == "length") {
      r.finish_reason = FinishReason::kLength;
    } else if (reason == "error") {
      r.finish_reason = FinishReason::kError;
    } else {
      throw fail("unknown finish_reason '" + reason + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw fail(e.what());
  }
  if (r.request_id != request_id) throw fail("request_id mismatch '" + r.request_id + "'");
  if (r.finish_reason == FinishReason::kError && !r.text.empty()) {
    throw fail("finish_reason error with non-empty text");
  }
  return r;
}

HttpTransport::HttpTransport(std::string base_url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  constexpr std::string_view kScheme = "http://";
  if (base_url.rfind(kScheme, 0) != 0) {
    throw Error(ErrorCategory::kUsage, "endpoint must start with http://: " + base_url);
  }
  const auto slash = base_url.find('/', kScheme.size());
  origin_ = base_url.substr(0, slash);
  path_ = slash == std::string::npos ? "" : base_url.substr(slash);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/complete";
}

HttpResult HttpTransport::Post(const std::string& body, const std::string& pair_id) {
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  httplib::Headers headers;
  if (!pair_id.empty()) headers.emplace("X-Pair-Id", pair_id);
  auto res = client.Post(path_, headers, body, "application/json");
  if (!res) return {0, {}, httplib::to_string(res.error())};
  return {res->status, res->body, {}};
}

LlmClient::LlmClient(std::shared_ptr<Transport> transport, RetryPolicy policy,
                     int max_in_flight)
    : transport_(std::move(transport)),
      policy_(std::move(policy)),
      max_in_flight_(max_in_flight),
      gate_(max_in_flight) {
  if (max_in_flight < 1) throw Error(ErrorCategory::kUsage, "max_in_flight must be >= 1");
  if (policy_.max_attempts < 1) throw Error(ErrorCategory::kUsage, "max_attempts must be >= 1");
}

CompletionResponse LlmClient::Complete(const CompletionRequest& req,
                                       const std::string& pair_id) {
  if (req.max_tokens < 1 || !(req.temperature >= 0.0)) {
    throw Error(ErrorCategory::kUsage,
                "invalid request " + req.request_id + ": max_tokens < 1 or temperature < 0");
  }
  const std::string body = ToJson(req).dump();
  const auto start = std::chrono::steady_clock::now();
  HttpResult last;
  for (int attempt = 1; attempt <= policy_.max_attempts; ++attempt) {
    if (attempt > 1) {
      const auto delay = policy_.base_delay * (1 << (attempt - 2));
      if (policy_.sleeper) {
        policy_.sleeper(delay);
      } else {
        std::this_thread::sleep_for(delay);
      }
    }
    gate_.acquire();
    try {
      last = transport_->Post(body, pair_id);
    } catch (...) {
      gate_.release();
      throw;
    }
    gate_.release();
    if (last.status >= 200 && last.status < 300) {
      CompletionResponse r = ParseCompletionResponse(last.body, req.request_id);
      r.latency_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
      return r;
    }
    if (!Retryable(last)) {
      throw TransportError(req.request_id, "request " + req.request_id +
                                               " rejected: " + Describe(last));
    }
  }
  throw TransportError(req.request_id,
                       "request " + req.request_id + " failed after " +
                           std::to_string(policy_.max_attempts) +
                           " attempts: " + Describe(last));
}

std::shared_ptr<Transport> MakeTransport(const std::string& endpoint) {
  constexpr std::string_view kMock = "mock:";
  if (endpoint.rfind(kMock, 0) == 0) {
    return std::make_shared<MockEndpoint>(
        LoadMockScript(endpoint.substr(kMock.size())));
  }
  if (endpoint.rfind("http://", 0) == 0) return std::make_shared<HttpTransport>(endpoint);
  throw Error(ErrorCategory::kUsage, "unsupported endpoint: " + endpoint);
}

}  // namespace forensa
