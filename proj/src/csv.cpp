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

#include "labelbench/csv.hpp"

#include "labelbench/types.hpp"

namespace labelbench::csv {
namespace {

// Returns true when the line ends inside an open quote.
bool append_fields(std::string_view line, char delimiter, std::vector<std::string>& fields,
                   bool in_quotes) {
  if (fields.empty()) fields.emplace_back();
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    std::string& field = fields.back();
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.emplace_back();
    } else {
      field.push_back(c);
    }
  }
  return in_quotes;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

bool Reader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  if (!std::getline(in_, line)) return false;
  ++physical_line_;
  record_line_ = physical_line_;
  if (physical_line_ == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  strip_cr(line);

  bool open = append_fields(line, delimiter_, fields, false);
  while (open) {
    if (!std::getline(in_, line)) {
      throw ParseError("csv", record_line_, "unterminated quoted field");
    }
    ++physical_line_;
    strip_cr(line);
    fields.back().push_back('\n');
    open = append_fields(line, delimiter_, fields, true);
  }
  return true;
}

std::vector<std::string> split_line(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  if (append_fields(line, delimiter, fields, false)) {
    throw Error("unterminated quoted field");
  }
  return fields;
}

std::string escape(std::string_view field, char delimiter) {
  if (field.find_first_of(std::string{delimiter, '"', '\n', '\r'}) == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields, char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(delimiter);
    out << escape(fields[i], delimiter);
  }
  out.put('\n');
}

}  // namespace labelbench::csv
