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
#ifndef ORBENCH_CLI_COMMANDS_HPP_
#define ORBENCH_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "orbench/llm_gateway.hpp"

namespace orbench::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUpstreamFile = 3;
inline constexpr int kExitReplayMiss = 4;

struct CliEnv {
  std::ostream* out = nullptr;  // defaults to std::cout
  std::ostream* err = nullptr;  // defaults to std::cerr
  // Used outside replay mode; HttpTransport when null.
  std::shared_ptr<Transport> transport;
};

// args[0] is the program name. Never throws.
int run_cli(const std::vector<std::string>& args, const CliEnv& env = {});
int run_cli(int argc, char** argv);

// Directory holding stubs/, models/, exemplars/ and manifests/:
// $ORBENCH_DATA_DIR when set, else the build-time location.
std::string default_data_dir();

}  // namespace orbench::cli

#endif  // ORBENCH_CLI_COMMANDS_HPP_
