// Copyright 2026 The sentid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SENTID_ERROR_H_
#define SENTID_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sentid {

// Coarse error category; the CLI maps it onto its exit code.
enum class ErrorKind {
  kUsage,     // bad flags or configuration
  kData,      // malformed or invalid input data
  kInternal,  // broken invariant inside the library
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Syntax error in a text format; line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, std::size_t line = 0)
      : Error(ErrorKind::kData,
              line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Well-formed input that breaks a structural rule (dangling head, ragged
// columns, misaligned documents).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string &message)
      : Error(ErrorKind::kData, message) {}
};

// A value outside its permitted domain.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &message)
      : Error(ErrorKind::kData, message) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &message)
      : Error(ErrorKind::kUsage, message) {}
};

}  // namespace sentid

#endif  // SENTID_ERROR_H_
