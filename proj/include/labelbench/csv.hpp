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

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace labelbench::csv {

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF, UTF-8 BOM.
/// A quoted field may span physical lines; line() reports where the record
/// started.
class Reader {
 public:
  explicit Reader(std::istream& in, char delimiter = ',') : in_(in), delimiter_(delimiter) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  std::size_t line() const noexcept { return record_line_; }

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t physical_line_ = 0;
  std::size_t record_line_ = 0;
};

/// Splits a single physical line. Throws labelbench::Error on an unterminated
/// quote.
std::vector<std::string> split_line(std::string_view line, char delimiter = ',');

/// Quotes a field only when it contains the delimiter, a quote or a newline.
std::string escape(std::string_view field, char delimiter = ',');

void write_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter = ',');

}  // namespace labelbench::csv
