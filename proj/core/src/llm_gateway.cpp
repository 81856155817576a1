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
#include "orbench/llm_gateway.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

using Clock = std::chrono::steady_clock;
using Messages = std::vector<std::pair<std::string, std::string>>;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string endpoint_url(const std::string& base) {
  std::string url = base;
  while (!url.empty() && url.back() == '/') url.pop_back();
  if (!url.ends_with("/chat/completions")) url += "/chat/completions";
  return url;
}

}  // namespace

nlohmann::ordered_json to_json(const GenerationRecord& r) {
  nlohmann::ordered_json transcript = nlohmann::ordered_json::array();
  for (const auto& ex : r.tool_transcript) {
    transcript.push_back(
        {{"query", ex.query.name}, {"result", to_json(ex.result)}});
  }
  nlohmann::ordered_json j;
  j["prompt"] = r.prompt;
  j["system_text"] = r.system_text;
  j["reasoning_content"] =
      r.reasoning ? nlohmann::ordered_json(*r.reasoning) : nlohmann::ordered_json(nullptr);
  j["content"] = r.content;
  j["model_id"] = r.model_id;
  j["strategy"] = r.strategy;
  j["attempt_count"] = r.attempt_count;
  j["tool_transcript"] = std::move(transcript);
  j["wall_time_ms"] = r.wall_time.count();
  j["tool_budget_exhausted"] = r.tool_budget_exhausted;
  j["error"] = r.error ? nlohmann::ordered_json(*r.error) : nlohmann::ordered_json(nullptr);
  return j;
}

GenerationRecord generation_from_json(const nlohmann::json& j) {
  GenerationRecord r;
  r.prompt = j.value("prompt", "");
  r.system_text = j.value("system_text", "");
  if (auto it = j.find("reasoning_content"); it != j.end() && it->is_string()) {
    r.reasoning = it->get<std::string>();
  }
  r.content = j.value("content", "");
  r.model_id = j.value("model_id", "");
  r.strategy = j.value("strategy", "");
  r.attempt_count = j.value("attempt_count", 1);
  for (const auto& ex : j.value("tool_transcript", nlohmann::json::array())) {
    r.tool_transcript.push_back({ToolQuery{ex.at("query").get<std::string>()},
                                 tool_result_from_json(ex.at("result"))});
  }
  r.wall_time = std::chrono::milliseconds(j.value("wall_time_ms", 0));
  r.tool_budget_exhausted = j.value("tool_budget_exhausted", false);
  if (auto it = j.find("error"); it != j.end() && it->is_string()) {
    r.error = it->get<std::string>();
  }
  return r;
}

HttpResponse PanickingTransport::post_json(
    const std::string& url,
    const std::vector<std::pair<std::string, std::string>>&,
    const std::string&, std::chrono::seconds) {
  std::fprintf(stderr, "PanickingTransport: unexpected network request to %s\n",
               url.c_str());
  std::abort();
}

std::string_view to_string(CassetteMode mode) {
  switch (mode) {
    case CassetteMode::Record:
      return "record";
    case CassetteMode::Replay:
      return "replay";
    case CassetteMode::Passthrough:
      return "passthrough";
  }
  return "?";
}

std::optional<CassetteMode> parse_cassette_mode(std::string_view s) {
  if (s == "record") return CassetteMode::Record;
  if (s == "replay") return CassetteMode::Replay;
  if (s == "passthrough" || s == "off") return CassetteMode::Passthrough;
  return std::nullopt;
}

std::string request_fingerprint(std::string_view model_id,
                                std::string_view system_text,
                                std::string_view prompt,
                                std::span<const ToolExchange> transcript) {
  nlohmann::json prefix = nlohmann::json::array();
  for (const auto& ex : transcript) {
    prefix.push_back({ex.query.name, render_tool_result(ex.result)});
  }
  nlohmann::json key = nlohmann::json::array(
      {std::string(model_id), std::string(system_text), std::string(prompt),
       std::move(prefix)});
  return sha256_hex(
      key.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace));
}

Cassette::Cassette(std::filesystem::path path, CassetteMode mode)
    : path_(std::move(path)), mode_(mode) {
  if (std::filesystem::exists(*path_)) {
    for (const auto& row : read_jsonl(*path_)) {
      const std::string fp = row.at("fingerprint").get<std::string>();
      if (by_fingerprint_.count(fp)) continue;
      by_fingerprint_[fp] = entries_.size();
      entries_.emplace_back(fp, generation_from_json(row.at("record")));
    }
  } else if (mode_ == CassetteMode::Replay) {
    throw UpstreamFileError("cassette not found: " + path_->string());
  }
}

std::optional<GenerationRecord> Cassette::find(
    const std::string& fingerprint) const {
  std::lock_guard lock(mu_);
  auto it = by_fingerprint_.find(fingerprint);
  if (it == by_fingerprint_.end()) return std::nullopt;
  return entries_[it->second].second;
}

void Cassette::append(const std::string& fingerprint,
                      const GenerationRecord& record) {
  std::lock_guard lock(mu_);
  if (by_fingerprint_.count(fingerprint)) return;
  by_fingerprint_[fingerprint] = entries_.size();
  entries_.emplace_back(fingerprint, record);
  if (path_) {
    if (path_->has_parent_path()) {
      std::filesystem::create_directories(path_->parent_path());
    }
    std::ofstream out(*path_, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot append to cassette " + path_->string());
    nlohmann::ordered_json row;
    row["fingerprint"] = fingerprint;
    row["record"] = to_json(record);
    out << dump_line(row) << '\n';
  }
}

std::size_t Cassette::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::vector<std::pair<std::string, GenerationRecord>> Cassette::entries()
    const {
  std::lock_guard lock(mu_);
  return entries_;
}

std::vector<std::string> parse_tool_calls(std::string_view content) {
  std::vector<std::string> names;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view l = trim(line);
    if (!l.starts_with(kToolCallPrefix)) continue;
    std::string name = trim_copy(l.substr(kToolCallPrefix.size()));
    // Tolerate "TOOL: `addVar`" and "TOOL: addVar()".
    if (name.size() >= 2 && name.front() == '`' && name.back() == '`') {
      name = name.substr(1, name.size() - 2);
    }
    if (name.ends_with("()")) name.resize(name.size() - 2);
    if (!name.empty()) names.push_back(std::move(name));
  }
  return names;
}

std::string build_chat_request(const std::string& model_id,
                               const Messages& messages) {
  nlohmann::ordered_json body;
  body["model"] = model_id;
  nlohmann::ordered_json msgs = nlohmann::ordered_json::array();
  for (const auto& [role, content] : messages) {
    msgs.push_back({{"role", role}, {"content", content}});
  }
  body["messages"] = std::move(msgs);
  body["stream"] = false;
  return dump_line(body);
}

ChatReply parse_chat_response(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed response body: ") + e.what());
  }
  if (j.contains("error")) throw Error("API error: " + j["error"].dump());
  const auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) {
    throw Error("response has no choices");
  }
  const auto& message = (*choices)[0].value("message", nlohmann::json::object());
  ChatReply reply;
  if (auto c = message.find("content"); c != message.end() && c->is_string()) {
    reply.content = c->get<std::string>();
  }
  if (auto r = message.find("reasoning_content");
      r != message.end() && r->is_string()) {
    reply.reasoning = r->get<std::string>();
  }
  if (trim(reply.content).empty()) throw Error("response content is empty");
  return reply;
}

LlmGateway::LlmGateway(GatewayConfig config,
                       std::shared_ptr<Transport> transport,
                       std::shared_ptr<Cassette> cassette)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      cassette_(std::move(cassette)) {
  if (config_.max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (!transport_ && mode() != CassetteMode::Replay) {
    throw ConfigError("a transport is required outside replay mode");
  }
}

CassetteMode LlmGateway::mode() const {
  return cassette_ ? cassette_->mode() : CassetteMode::Passthrough;
}

GenerationRecord LlmGateway::call_upstream(const Messages& messages) const {
  const std::string url = endpoint_url(config_.base_url);
  const std::string body = build_chat_request(config_.model_id, messages);
  std::vector<std::pair<std::string, std::string>> headers;
  if (!config_.api_key.empty()) {
    headers.emplace_back("Authorization", "Bearer " + config_.api_key);
  }

  const auto start = Clock::now();
  std::string last_error;
  const int max_attempts = config_.max_retries + 1;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    ++network_attempts_;
    try {
      HttpResponse res = transport_->post_json(url, headers, body,
                                               config_.request_timeout);
      if (res.status != 200) {
        throw Error("HTTP " + std::to_string(res.status) + ": " +
                    res.body.substr(0, 200));
      }
      ChatReply reply = parse_chat_response(res.body);
      GenerationRecord rec;
      rec.content = std::move(reply.content);
      rec.reasoning = std::move(reply.reasoning);
      rec.model_id = config_.model_id;
      rec.attempt_count = attempt;
      rec.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(
          Clock::now() - start);
      return rec;
    } catch (const std::exception& e) {
      last_error = e.what();
    }
    if (attempt < max_attempts && config_.retry_delay.count() > 0) {
      std::this_thread::sleep_for(config_.retry_delay);
    }
  }
  throw RetriesExhaustedError(max_attempts, last_error);
}

GenerationRecord LlmGateway::turn(const Messages& messages,
                                  const std::string& prompt,
                                  const std::string& system_text,
                                  std::span<const ToolExchange> transcript,
                                  const std::string& strategy) const {
  const std::string fp =
      request_fingerprint(config_.model_id, system_text, prompt, transcript);
  const CassetteMode m = mode();
  if (m != CassetteMode::Passthrough) {
    if (auto hit = cassette_->find(fp)) {
      hit->strategy = strategy;
      return *hit;
    }
    if (m == CassetteMode::Replay) throw ReplayMissError(fp);
  }
  GenerationRecord rec = call_upstream(messages);
  rec.prompt = prompt;
  rec.system_text = system_text;
  rec.strategy = strategy;
  rec.tool_transcript.assign(transcript.begin(), transcript.end());
  if (m == CassetteMode::Record) cassette_->append(fp, rec);
  return rec;
}

GenerationRecord LlmGateway::complete(const std::string& prompt,
                                      const std::string& system_text,
                                      const std::string& strategy) const {
  Messages messages{{"system", system_text}, {"user", prompt}};
  return turn(messages, prompt, system_text, {}, strategy);
}

GenerationRecord LlmGateway::complete_with_tools(
    const std::string& prompt, const std::string& system_text,
    const ToolHandler& tool_handler, int max_tool_calls,
    const std::string& strategy) const {
  Messages messages{{"system", system_text}, {"user", prompt}};
  std::vector<ToolExchange> transcript;
  int max_attempts = 1;
  std::chrono::milliseconds total{0};
  while (true) {
    GenerationRecord rec =
        turn(messages, prompt, system_text, transcript, strategy);
    max_attempts = std::max(max_attempts, rec.attempt_count);
    total += rec.wall_time;
    const auto calls = parse_tool_calls(rec.content);
    const bool over_budget =
        static_cast<int>(transcript.size() + calls.size()) > max_tool_calls;
    if (calls.empty() || over_budget) {
      rec.prompt = prompt;
      rec.system_text = system_text;
      rec.strategy = strategy;
      rec.attempt_count = max_attempts;
      rec.wall_time = total;
      rec.tool_transcript = std::move(transcript);
      rec.tool_budget_exhausted = over_budget;
      return rec;
    }
    std::string tool_turn;
    for (const auto& name : calls) {
      ToolQuery q{name};
      ToolResult r = tool_handler(q);
      if (!tool_turn.empty()) tool_turn += "\n";
      tool_turn += std::string(kToolResultPrefix) + " " + render_tool_result(r);
      transcript.push_back({std::move(q), std::move(r)});
    }
    messages.emplace_back("assistant", rec.content);
    messages.emplace_back("user", std::move(tool_turn));
  }
}

}  // namespace orbench
