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
#ifndef ORBENCH_TESTS_SUPPORT_TEST_ENV_HPP_
#define ORBENCH_TESTS_SUPPORT_TEST_ENV_HPP_

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

namespace orbench::testing {

inline std::filesystem::path fixture_dir() { return ORBENCH_TEST_FIXTURES; }
inline std::filesystem::path data_dir() { return ORBENCH_TEST_DATA; }
inline std::filesystem::path fixture(const std::string& name) {
  return fixture_dir() / name;
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("orbench-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace orbench::testing

#endif  // ORBENCH_TESTS_SUPPORT_TEST_ENV_HPP_
