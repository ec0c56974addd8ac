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

#include "forensa/mock_endpoint.h"

#include <cctype>

#include "forensa/jsonl.h"
#include "httplib.h"

namespace forensa {

namespace {

// Cuts after the n-th whitespace-separated word; returns false if no cut.
bool CutWords(std::string& text, int n) {
  int words = 0;
  bool in_word = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool space = std::isspace(static_cast<unsigned char>(text[i])) != 0;
    if (!space && !in_word) {
      if (words == n) {
        text.resize(i);
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
          text.pop_back();
        }
        return true;
      }
      ++words;
    }
    in_word = !space;
  }
  return false;
}

class InFlight {
 public:
  InFlight(std::atomic<int>& current, std::atomic<int>& peak) : current_(current) {
    const int now = ++current_;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
  }
  ~InFlight() { --current_; }

 private:
  std::atomic<int>& current_;
};

}  // namespace

MockScript LoadMockScript(const std::filesystem::path& path) {
  const JsonlDocument doc = ReadJsonl(path, kMockScriptKind);
  MockScript script;
  bool have_default = false;
  for (const auto& row : doc.rows) {
    try {
      if (row.contains("default")) {
        if (have_default) throw DataError("mock script has two default rows: " + path.string());
        have_default = true;
        const auto kind = row.at("default").get<std::string>();
        if (kind == "garbage") {
          script.fallback = MockDefault::kGarbage;
        } else if (kind == "fixed") {
          script.fallback = MockDefault::kFixedText;
          script.fixed_text = row.at("text").get<std::string>();
        } else {
          throw DataError("unknown mock default '" + kind + "' in " + path.string());
        }
        continue;
      }
      const auto id = row.at("pair_id").get<std::string>();
      if (!script.completions.emplace(id, row.at("text").get<std::string>()).second) {
        throw DataError("duplicate pair_id in mock script: " + id);
      }
    } catch (const nlohmann::json::exception& e) {
      throw DataError("bad mock script row in " + path.string() + ": " + e.what());
    }
  }
  return script;
}

void SaveMockScript(const std::filesystem::path& path, const MockScript& script,
                    std::uint64_t seed) {
  std::vector<nlohmann::json> rows;
  if (script.fallback == MockDefault::kFixedText) {
    rows.push_back({{"default", "fixed"}, {"text", script.fixed_text}});
  } else {
    rows.push_back({{"default", "garbage"}});
  }
  for (const auto& [id, text] : script.completions) {
    rows.push_back({{"pair_id", id}, {"text", text}});
  }
  WriteJsonl(path, {kSchemaVersion, std::string(kMockScriptKind), seed, ""}, rows);
}

MockEndpoint::MockEndpoint(MockScript script) : script_(std::move(script)) {}

void MockEndpoint::ScriptFailures(const std::string& pair_id, std::deque<int> statuses) {
  std::lock_guard lock(mu_);
  failures_[pair_id] = std::move(statuses);
}

void MockEndpoint::ScriptRawBody(const std::string& pair_id, std::string body) {
  std::lock_guard lock(mu_);
  raw_bodies_[pair_id] = std::move(body);
}

void MockEndpoint::SetDelay(
    std::function<std::chrono::milliseconds(const std::string&)> delay) {
  std::lock_guard lock(mu_);
  delay_ = std::move(delay);
}

std::string MockEndpoint::CompletionFor(const std::string& pair_id) const {
  const auto it = script_.completions.find(pair_id);
  if (it != script_.completions.end()) return it->second;
  return script_.fallback == MockDefault::kFixedText ? script_.fixed_text
                                                     : std::string(kMockGarbageText);
}

HttpResult MockEndpoint::Post(const std::string& body, const std::string& pair_id) {
  InFlight guard(in_flight_, max_concurrent_);
  ++served_;
  std::function<std::chrono::milliseconds(const std::string&)> delay;
  {
    std::lock_guard lock(mu_);
    delay = delay_;
    if (auto it = failures_.find(pair_id); it != failures_.end() && !it->second.empty()) {
      const int status = it->second.front();
      it->second.pop_front();
      return {status, R"({"error":"scripted failure"})", {}};
    }
    if (auto it = raw_bodies_.find(pair_id); it != raw_bodies_.end()) {
      return {200, it->second, {}};
    }
  }
  if (delay) std::this_thread::sleep_for(delay(pair_id));

  const nlohmann::json j = nlohmann::json::parse(body, nullptr, false);
  CompletionRequest req;
  try {
    req = CompletionRequestFromJson(j);
  } catch (const ProtocolError& e) {
    return {400, nlohmann::json{{"error", e.what()}}.dump(), {}};
  }
  std::string text = CompletionFor(pair_id);
  const bool cut = CutWords(text, req.max_tokens);
  const nlohmann::json reply = {
      {"request_id", req.request_id},
      {"text", text},
      {"finish_reason", cut ? "length" : "stop"},
  };
  return {200, reply.dump(), {}};
}

struct MockHttpServer::Impl {
  httplib::Server server;
};

MockHttpServer::MockHttpServer(std::shared_ptr<MockEndpoint> endpoint)
    : impl_(std::make_unique<Impl>()) {
  impl_->server.Post("/complete", [endpoint](const httplib::Request& req,
                                             httplib::Response& res) {
    const HttpResult r = endpoint->Post(req.body, req.get_header_value("X-Pair-Id"));
    res.status = r.status;
    res.set_content(r.body, "application/json");
  });
  port_ = impl_->server.bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw Error(ErrorCategory::kTransport, "mock server could not bind");
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

MockHttpServer::~MockHttpServer() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockHttpServer::url() const {
  return "http://127.0.0.1:" + std::to_string(port_);
}

}  // namespace forensa
