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

// Scripted in-process completion endpoint keyed by the X-Pair-Id header, and
// a localhost HTTP server that fronts it.

#ifndef FORENSA_MOCK_ENDPOINT_H_
#define FORENSA_MOCK_ENDPOINT_H_

#include <atomic>
#include <chrono>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "forensa/llm_client.h"

namespace forensa {

enum class MockDefault {
  kGarbage,     // text that fails the conclusion grammar
  kFixedText,   // MockScript::fixed_text
};

struct MockScript {
  std::map<std::string, std::string> completions;  // pair_id -> text
  MockDefault fallback = MockDefault::kGarbage;
  std::string fixed_text;
};

inline constexpr std::string_view kMockScriptKind = "mock_script";
inline constexpr std::string_view kMockGarbageText =
    "The recordings are interesting, but I cannot decide.";

// JSON-lines with rows {"pair_id","text"} and at most one row
// {"default":"garbage"} or {"default":"fixed","text":...}.
MockScript LoadMockScript(const std::filesystem::path& path);
void SaveMockScript(const std::filesystem::path& path, const MockScript& script,
                    std::uint64_t seed);

class MockEndpoint : public Transport {
 public:
  explicit MockEndpoint(MockScript script);

  // Replies to a protocol request. The completion is cut to max_tokens
  // whitespace-separated words with finish_reason "length".
  HttpResult Post(const std::string& body, const std::string& pair_id) override;

  // Status codes returned, in order, before answering normally.
  void ScriptFailures(const std::string& pair_id, std::deque<int> statuses);
  // Body returned verbatim with status 200.
  void ScriptRawBody(const std::string& pair_id, std::string body);
  void SetDelay(std::function<std::chrono::milliseconds(const std::string&)> delay);

  int requests_served() const { return served_.load(); }
  int max_concurrent() const { return max_concurrent_.load(); }

 private:
  std::string CompletionFor(const std::string& pair_id) const;

  MockScript script_;
  mutable std::mutex mu_;
  std::map<std::string, std::deque<int>> failures_;
  std::map<std::string, std::string> raw_bodies_;
  std::function<std::chrono::milliseconds(const std::string&)> delay_;
  std::atomic<int> served_{0};
  std::atomic<int> in_flight_{0};
  std::atomic<int> max_concurrent_{0};
};

// Serves POST /complete on 127.0.0.1 from a background thread.
class MockHttpServer {
 public:
  explicit MockHttpServer(std::shared_ptr<MockEndpoint> endpoint);
  ~MockHttpServer();
  MockHttpServer(const MockHttpServer&) = delete;
  MockHttpServer& operator=(const MockHttpServer&) = delete;

  int port() const { return port_; }
  std::string url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace forensa

#endif  // FORENSA_MOCK_ENDPOINT_H_
