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

#include "labelbench/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include <fmt/format.h>

#include "labelbench/csv.hpp"
#include "labelbench/textkit.hpp"

namespace labelbench {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool parse_uint(std::string_view text, std::uint32_t& value) {
  text = trim(text);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

void expect_header(csv::Reader& reader, std::vector<std::string>& fields, std::string_view first,
                   std::string_view second, const std::string& source) {
  if (!reader.next(fields)) throw ParseError(source, 1, "missing header");
  if (fields.size() != 2 || trim(fields[0]) != first || trim(fields[1]) != second) {
    throw ParseError(source, reader.line(), fmt::format("expected header '{},{}'", first, second));
  }
}

}  // namespace

LabelRecord make_record(LabelId id, std::string attribute_name, std::string_view separator) {
  LabelRecord record;
  record.id = id;
  const auto pos = separator.empty() ? std::string::npos : attribute_name.find(separator);
  if (pos == std::string::npos) {
    record.category = std::string(kUncategorized);
    record.name = attribute_name;
  } else {
    record.category = attribute_name.substr(0, pos);
    record.name = attribute_name.substr(pos + separator.size());
  }
  record.canonical = canonicalize(record.name);
  record.attribute_name = std::move(attribute_name);
  return record;
}

LabelCatalog::LabelCatalog(std::vector<LabelRecord> records, std::string separator)
    : records_(std::move(records)), separator_(std::move(separator)) {
  std::sort(records_.begin(), records_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  by_id_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!by_id_.emplace(r.id, i).second) {
      throw ValidationError(fmt::format("duplicate attribute id {}", raw(r.id)));
    }
    by_canonical_[key(r.category, r.canonical)].push_back(r.id);
    by_attribute_.emplace(r.attribute_name, r.id);
  }
}

std::string LabelCatalog::key(std::string_view category, std::string_view canonical) {
  std::string k;
  k.reserve(category.size() + canonical.size() + 1);
  k.append(category);
  k.push_back('\x1f');
  k.append(canonical);
  return k;
}

const LabelRecord* LabelCatalog::find(LabelId id) const {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &records_[it->second];
}

const LabelRecord& LabelCatalog::at(LabelId id) const {
  if (const auto* r = find(id)) return *r;
  throw ValidationError(fmt::format("unknown attribute id {}", raw(id)));
}

std::vector<LabelId> LabelCatalog::find_canonical(std::string_view category, std::string_view canonical) const {
  const auto it = by_canonical_.find(key(category, canonical));
  return it == by_canonical_.end() ? std::vector<LabelId>{} : it->second;
}

const LabelRecord* LabelCatalog::find_attribute(std::string_view attribute_name) const {
  if (const auto it = by_attribute_.find(std::string(attribute_name)); it != by_attribute_.end()) {
    return find(it->second);
  }
  const auto probe = make_record(LabelId{}, std::string(attribute_name), separator_);
  auto matches = find_canonical(probe.category, probe.canonical);
  if (matches.empty()) matches = find_canonical(canonicalize(probe.category), probe.canonical);
  return matches.size() == 1 ? find(matches.front()) : nullptr;
}

std::vector<std::string> LabelCatalog::categories() const {
  std::vector<std::string> out;
  for (const auto& r : records_) out.push_back(r.category);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LabelId> LabelCatalog::ids() const {
  std::vector<LabelId> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.id);
  return out;
}

std::vector<LabelId> LabelCatalog::ids_in_category(std::string_view category) const {
  std::vector<LabelId> out;
  for (const auto& r : records_) {
    if (r.category == category) out.push_back(r.id);
  }
  return out;
}

std::vector<std::vector<LabelId>> LabelCatalog::duplicate_canonicals() const {
  std::vector<std::vector<LabelId>> groups;
  for (const auto& [k, ids] : by_canonical_) {
    if (ids.size() > 1) groups.push_back(ids);
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

LabelCatalog LabelCatalog::without(std::span<const LabelId> removed) const {
  const std::unordered_set<LabelId> drop(removed.begin(), removed.end());
  std::vector<LabelRecord> kept;
  kept.reserve(records_.size());
  for (const auto& r : records_) {
    if (!drop.contains(r.id)) kept.push_back(r);
  }
  return LabelCatalog(std::move(kept), separator_);
}

ParsedCatalog parse_labels(std::istream& in, const LabelFormat& format, std::string source) {
  csv::Reader reader(in, format.delimiter);
  std::vector<std::string> fields;
  expect_header(reader, fields, "attribute_id", "attribute_name", source);

  ParsedCatalog result;
  std::vector<LabelRecord> records;
  std::unordered_set<LabelId> seen;
  while (reader.next(fields)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (fields.size() != 2) {
      throw ParseError(source, reader.line(), fmt::format("expected 2 columns, found {}", fields.size()));
    }
    std::uint32_t id = 0;
    if (!parse_uint(fields[0], id)) {
      throw ParseError(source, reader.line(), fmt::format("invalid attribute_id '{}'", fields[0]));
    }
    if (!seen.insert(label_id(id)).second) {
      throw ParseError(source, reader.line(), fmt::format("duplicate attribute_id {}", id));
    }
    auto record = make_record(label_id(id), std::move(fields[1]), format.separator);
    if (record.category == kUncategorized && record.attribute_name.find(format.separator) == std::string::npos) {
      result.warnings.push_back({reader.line(), fmt::format("attribute {} has no '{}' separator; filed as {}", id,
                                                            format.separator, kUncategorized)});
    }
    records.push_back(std::move(record));
  }
  result.catalog = LabelCatalog(std::move(records), format.separator);
  return result;
}

void write_labels(std::ostream& out, const LabelCatalog& catalog) {
  out << "attribute_id,attribute_name\n";
  for (const auto& r : catalog.records()) {
    csv::write_row(out, {std::to_string(raw(r.id)), r.attribute_name});
  }
}

bool Sample::has(LabelId label) const { return std::binary_search(labels.begin(), labels.end(), label); }

AnnotationSet::AnnotationSet(std::vector<Sample> samples) : samples_(std::move(samples)) {
  index_.reserve(samples_.size());
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    auto& labels = samples_[i].labels;
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (!index_.emplace(samples_[i].id, i).second) {
      throw ValidationError(fmt::format("duplicate sample id '{}'", samples_[i].id));
    }
  }
}

const Sample* AnnotationSet::find(std::string_view sample_id) const {
  const auto it = index_.find(std::string(sample_id));
  return it == index_.end() ? nullptr : &samples_[it->second];
}

std::size_t AnnotationSet::positive_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : samples_) n += s.labels.size();
  return n;
}

std::vector<std::size_t> AnnotationSet::order_by_id() const {
  std::vector<std::size_t> order(samples_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return samples_[a].id < samples_[b].id; });
  return order;
}

void AnnotationSet::validate(const LabelCatalog& catalog) const {
  std::vector<std::string> problems;
  for (const auto& s : samples_) {
    for (LabelId l : s.labels) {
      if (!catalog.contains(l)) problems.push_back(fmt::format("{} (attribute {})", s.id, raw(l)));
    }
  }
  if (!problems.empty()) {
    const std::size_t shown = std::min<std::size_t>(problems.size(), 10);
    std::string listing;
    for (std::size_t i = 0; i < shown; ++i) listing += (i ? ", " : "") + problems[i];
    throw ValidationError(fmt::format("{} unknown attribute reference(s): {}{}", problems.size(), listing,
                                      problems.size() > shown ? ", ..." : ""));
  }
}

ParsedAnnotations parse_annotations(std::istream& in, const LabelCatalog& catalog, const AnnotationFormat& format,
                                    std::string source) {
  csv::Reader reader(in, format.delimiter);
  std::vector<std::string> fields;
  expect_header(reader, fields, "id", "attribute_ids", source);

  ParsedAnnotations result;
  std::vector<Sample> samples;
  std::unordered_set<std::string> seen;
  while (reader.next(fields)) {
    if (fields.size() == 1 && trim(fields[0]).empty()) continue;
    if (fields.size() != 2) {
      throw ParseError(source, reader.line(), fmt::format("expected 2 columns, found {}", fields.size()));
    }
    Sample sample;
    sample.id = std::string(trim(fields[0]));
    if (sample.id.empty()) throw ParseError(source, reader.line(), "empty sample id");
    if (!seen.insert(sample.id).second) {
      throw ParseError(source, reader.line(), fmt::format("duplicate sample id '{}'", sample.id));
    }

    std::string_view rest = fields[1];
    while (!rest.empty()) {
      const auto start = rest.find_first_not_of(' ');
      if (start == std::string_view::npos) break;
      rest.remove_prefix(start);
      const auto end = std::min(rest.find(' '), rest.size());
      std::uint32_t id = 0;
      if (!parse_uint(rest.substr(0, end), id)) {
        throw ParseError(source, reader.line(),
                         fmt::format("sample '{}': invalid attribute id '{}'", sample.id, rest.substr(0, end)));
      }
      if (!catalog.contains(label_id(id))) {
        throw ParseError(source, reader.line(), fmt::format("sample '{}': unknown attribute id {}", sample.id, id));
      }
      sample.labels.push_back(label_id(id));
      rest.remove_prefix(end);
    }

    const std::size_t before = sample.labels.size();
    std::sort(sample.labels.begin(), sample.labels.end());
    sample.labels.erase(std::unique(sample.labels.begin(), sample.labels.end()), sample.labels.end());
    if (sample.labels.size() != before) {
      if (format.duplicates == DuplicateLabelPolicy::Error) {
        throw ParseError(source, reader.line(), fmt::format("sample '{}' repeats an attribute id", sample.id));
      }
      result.warnings.push_back(
          {reader.line(), fmt::format("sample '{}': {} repeated attribute id(s) dropped", sample.id,
                                      before - sample.labels.size())});
    }
    samples.push_back(std::move(sample));
  }
  result.annotations = AnnotationSet(std::move(samples));
  return result;
}

void write_annotations(std::ostream& out, const AnnotationSet& annotations) {
  out << "id,attribute_ids\n";
  for (const auto& s : annotations.samples()) {
    std::string ids;
    for (LabelId l : s.labels) {
      if (!ids.empty()) ids.push_back(' ');
      ids += std::to_string(raw(l));
    }
    csv::write_row(out, {s.id, ids});
  }
}

}  // namespace labelbench
