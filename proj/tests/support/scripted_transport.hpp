// Copyright 2026 The orbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef ORBENCH_TESTS_SUPPORT_SCRIPTED_TRANSPORT_HPP_
#define ORBENCH_TESTS_SUPPORT_SCRIPTED_TRANSPORT_HPP_

#include <nlohmann/json.hpp>

#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbench/llm_gateway.hpp"

namespace orbench::testing {

using ChatMessages = std::vector<std::pair<std::string, std::string>>;

struct ScriptedReply {
  std::string content;
  std::optional<std::string> reasoning;
};

// Answers chat requests from a callback; the first `failures` calls return
// HTTP 503 so retry paths can be exercised.
class ScriptedTransport final : public Transport {
 public:
  using Script = std::function<ScriptedReply(const ChatMessages&)>;

  explicit ScriptedTransport(Script script, int failures = 0)
      : script_(std::move(script)), failures_(failures) {}

  HttpResponse post_json(const std::string& url,
                         const std::vector<std::pair<std::string, std::string>>&,
                         const std::string& body,
                         std::chrono::seconds) override {
    {
      std::lock_guard lock(mu_);
      urls_.push_back(url);
      bodies_.push_back(body);
    }
    if (calls_.fetch_add(1) < failures_) return {503, "busy"};
    const auto j = nlohmann::json::parse(body);
    ChatMessages messages;
    for (const auto& m : j.at("messages")) {
      messages.emplace_back(m.at("role").get<std::string>(),
                            m.at("content").get<std::string>());
    }
    const ScriptedReply reply = script_(messages);
    nlohmann::json message = {{"role", "assistant"}, {"content", reply.content}};
    if (reply.reasoning) message["reasoning_content"] = *reply.reasoning;
    nlohmann::json out = {{"choices", {{{"index", 0}, {"message", message}}}}};
    return {200, out.dump()};
  }

  int calls() const { return calls_.load(); }
  std::vector<std::string> bodies() const {
    std::lock_guard lock(mu_);
    return bodies_;
  }
  std::vector<std::string> urls() const {
    std::lock_guard lock(mu_);
    return urls_;
  }

 private:
  Script script_;
  int failures_;
  std::atomic<int> calls_{0};
  mutable std::mutex mu_;
  std::vector<std::string> bodies_;
  std::vector<std::string> urls_;
};

inline std::string last_user_message(const ChatMessages& messages) {
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (it->first == "user") return it->second;
  }
  return {};
}

}  // namespace orbench::testing

#endif  // ORBENCH_TESTS_SUPPORT_SCRIPTED_TRANSPORT_HPP_
