// Copyright 2026 The labelbench Authors
// SPDX-License-Identifier: Apache-2.0
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace labelbench {

/// File-assigned attribute id. A distinct type so that label ids never mix
/// with counts or sample indices.
enum class LabelId : std::uint32_t {};

constexpr std::uint32_t raw(LabelId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr LabelId label_id(std::uint32_t value) noexcept { return static_cast<LabelId>(value); }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : Error(source + (line ? ":" + std::to_string(line) : std::string{}) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Well-formed input that violates a contract (unknown id, cycle, overlap).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Non-fatal finding emitted while ingesting third-party files.
struct Diagnostic {
  std::size_t line = 0;
  std::string message;
};

}  // namespace labelbench
