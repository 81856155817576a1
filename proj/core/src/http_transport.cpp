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
// cpp-httplib lives in its own translation unit; it is heavy to compile.
#include <httplib.h>

#include "orbench/llm_gateway.hpp"

namespace orbench {

HttpResponse HttpTransport::post_json(
    const std::string& url,
    const std::vector<std::pair<std::string, std::string>>& headers,
    const std::string& body, std::chrono::seconds timeout) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error("bad endpoint URL: " + url);
  const std::size_t path_start = url.find('/', scheme_end + 3);
  const std::string origin =
      path_start == std::string::npos ? url : url.substr(0, path_start);
  const std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers h;
  for (const auto& [k, v] : headers) h.emplace(k, v);
  auto res = client.Post(path, h, body, "application/json");
  if (!res) {
    throw Error("transport error: " + httplib::to_string(res.error()));
  }
  return HttpResponse{res->status, res->body};
}

}  // namespace orbench
