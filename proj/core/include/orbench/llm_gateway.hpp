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
#ifndef ORBENCH_LLM_GATEWAY_HPP_
#define ORBENCH_LLM_GATEWAY_HPP_

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbench/errors.hpp"
#include "orbench/tool_index.hpp"

namespace orbench {

struct ToolExchange {
  ToolQuery query;
  ToolResult result;
  friend bool operator==(const ToolExchange&, const ToolExchange&) = default;
};

struct GenerationRecord {
  std::string prompt;
  std::string system_text;
  std::optional<std::string> reasoning;  // "reasoning_content" channel
  std::string content;
  std::string model_id;
  std::string strategy;  // pipeline stage that issued the request
  int attempt_count = 1;
  std::vector<ToolExchange> tool_transcript;
  std::chrono::milliseconds wall_time{0};
  bool tool_budget_exhausted = false;
  // Set when the request never produced content (retries exhausted).
  std::optional<std::string> error;

  friend bool operator==(const GenerationRecord&,
                         const GenerationRecord&) = default;
};

nlohmann::ordered_json to_json(const GenerationRecord& r);
GenerationRecord generation_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Transport

struct HttpResponse {
  int status = 0;
  std::string body;
};

// Blocking POST of a JSON body. Implementations throw on transport-level
// failure (connection refused, TLS, timeout).
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post_json(
      const std::string& url,
      const std::vector<std::pair<std::string, std::string>>& headers,
      const std::string& body, std::chrono::seconds timeout) = 0;
};

// cpp-httplib client; supports http:// and https:// URLs.
class HttpTransport final : public Transport {
 public:
  HttpResponse post_json(
      const std::string& url,
      const std::vector<std::pair<std::string, std::string>>& headers,
      const std::string& body, std::chrono::seconds timeout) override;
};

// Aborts the process on use. Injected in replay runs to prove that no
// network request happens.
class PanickingTransport final : public Transport {
 public:
  HttpResponse post_json(
      const std::string& url,
      const std::vector<std::pair<std::string, std::string>>& headers,
      const std::string& body, std::chrono::seconds timeout) override;
};

// ---------------------------------------------------------------------------
// Cassette

enum class CassetteMode { Record, Replay, Passthrough };

std::string_view to_string(CassetteMode mode);
std::optional<CassetteMode> parse_cassette_mode(std::string_view s);

// SHA-256 (hex) of the canonical JSON array
// [model_id, system_text, prompt, transcript-prefix].
std::string request_fingerprint(std::string_view model_id,
                                std::string_view system_text,
                                std::string_view prompt,
                                std::span<const ToolExchange> transcript);

class ReplayMissError : public Error {
 public:
  explicit ReplayMissError(std::string fingerprint)
      : Error("replay miss for request fingerprint " + fingerprint),
        fingerprint_(std::move(fingerprint)) {}
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  std::string fingerprint_;
};

// JSONL file of {"fingerprint": ..., "record": GenerationRecord}. Appends go
// through one mutex and are flushed line by line.
class Cassette {
 public:
  Cassette(std::filesystem::path path, CassetteMode mode);
  // In-memory only (nothing is written).
  explicit Cassette(CassetteMode mode) : mode_(mode) {}

  CassetteMode mode() const { return mode_; }
  const std::optional<std::filesystem::path>& path() const { return path_; }

  std::optional<GenerationRecord> find(const std::string& fingerprint) const;
  void append(const std::string& fingerprint, const GenerationRecord& record);
  std::size_t size() const;
  std::vector<std::pair<std::string, GenerationRecord>> entries() const;

 private:
  std::optional<std::filesystem::path> path_;
  CassetteMode mode_;
  mutable std::mutex mu_;
  std::vector<std::pair<std::string, GenerationRecord>> entries_;
  std::map<std::string, std::size_t> by_fingerprint_;
};

// ---------------------------------------------------------------------------
// Gateway

struct GatewayConfig {
  // Base URL of a chat-completions endpoint; "/chat/completions" is
  // appended unless already present.
  std::string base_url = "https://api.deepseek.com";
  std::string api_key;
  std::string model_id = "deepseek-reasoner";
  int max_retries = 8;
  std::chrono::milliseconds retry_delay{10000};
  std::chrono::seconds request_timeout{600};
};

class RetriesExhaustedError : public Error {
 public:
  RetriesExhaustedError(int attempts, const std::string& last_error)
      : Error("gave up after " + std::to_string(attempts) +
              " attempts: " + last_error),
        attempts_(attempts),
        last_error_(last_error) {}
  int attempts() const { return attempts_; }
  const std::string& last_error() const { return last_error_; }

 private:
  int attempts_;
  std::string last_error_;
};

using ToolHandler = std::function<ToolResult(const ToolQuery&)>;

inline constexpr std::string_view kToolCallPrefix = "TOOL:";
inline constexpr std::string_view kToolResultPrefix = "TOOL_RESULT:";
// Appended to the tool-calling prompt so the model knows the protocol.
inline constexpr std::string_view kToolProtocolHint =
    "To look up a coptpy function or attribute, reply with a line of the "
    "form \"TOOL: <name>\" and nothing else on that line; the signature and "
    "documentation come back as \"TOOL_RESULT: ...\". When you are done, "
    "give the final answer without any TOOL line.";

// Names requested by "TOOL: <name>" lines, in order.
std::vector<std::string> parse_tool_calls(std::string_view content);

// Request body for an OpenAI-compatible chat-completions call.
std::string build_chat_request(
    const std::string& model_id,
    const std::vector<std::pair<std::string, std::string>>& messages);

struct ChatReply {
  std::optional<std::string> reasoning;
  std::string content;
};
// Extracts choices[0].message.{content,reasoning_content}; throws Error on a
// body without non-empty content.
ChatReply parse_chat_response(const std::string& body);

class LlmGateway {
 public:
  // cassette may be null, which behaves like Passthrough.
  LlmGateway(GatewayConfig config, std::shared_ptr<Transport> transport,
             std::shared_ptr<Cassette> cassette = nullptr);

  const GatewayConfig& config() const { return config_; }
  CassetteMode mode() const;

  // One model turn. Throws ReplayMissError in Replay mode when the request
  // was never recorded, RetriesExhaustedError when every attempt failed.
  GenerationRecord complete(const std::string& prompt,
                            const std::string& system_text,
                            const std::string& strategy = "") const;

  // ReAct-style loop over the TOOL:/TOOL_RESULT: text protocol. Stops when
  // a turn requests no tool, or flags tool_budget_exhausted once a turn
  // would push the call count past max_tool_calls.
  GenerationRecord complete_with_tools(const std::string& prompt,
                                       const std::string& system_text,
                                       const ToolHandler& tool_handler,
                                       int max_tool_calls = 8,
                                       const std::string& strategy = "") const;

  // Number of upstream HTTP attempts made (including failed ones).
  std::size_t network_attempts() const { return network_attempts_.load(); }

 private:
  GenerationRecord turn(
      const std::vector<std::pair<std::string, std::string>>& messages,
      const std::string& prompt, const std::string& system_text,
      std::span<const ToolExchange> transcript,
      const std::string& strategy) const;
  GenerationRecord call_upstream(
      const std::vector<std::pair<std::string, std::string>>& messages) const;

  GatewayConfig config_;
  std::shared_ptr<Transport> transport_;
  std::shared_ptr<Cassette> cassette_;
  mutable std::atomic<std::size_t> network_attempts_{0};
};

}  // namespace orbench

#endif  // ORBENCH_LLM_GATEWAY_HPP_
