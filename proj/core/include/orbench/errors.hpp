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

#ifndef ORBENCH_ERRORS_HPP_
#define ORBENCH_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbench {

// Root of every error thrown by the library. Per-instance failures inside a
// pipeline are recorded as data; only configuration or corrupt-input
// problems surface as exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input file missing or unreadable.
class UpstreamFileError : public Error {
 public:
  using Error::Error;
};

class MissingFieldError : public Error {
 public:
  MissingFieldError(std::size_t line, std::string field)
      : Error("line " + std::to_string(line) + ": missing field '" + field +
              "'"),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class MalformedLineError : public Error {
 public:
  MalformedLineError(std::size_t line, const std::string& why)
      : Error("line " + std::to_string(line) + ": " + why), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace orbench

#endif  // ORBENCH_ERRORS_HPP_
