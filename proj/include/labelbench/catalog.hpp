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
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "labelbench/types.hpp"

namespace labelbench {

inline constexpr std::string_view kUncategorized = "uncategorized";

struct LabelRecord {
  LabelId id{};
  std::string category;
  std::string name;
  std::string canonical;
  /// The attribute_name column exactly as read (category + separator + name).
  std::string attribute_name;

  friend bool operator==(const LabelRecord&, const LabelRecord&) = default;
};

/// Splits `attribute_name` at the first `separator`. Without a separator the
/// record lands in the "uncategorized" category.
LabelRecord make_record(LabelId id, std::string attribute_name, std::string_view separator);

/// Immutable attribute vocabulary, iterated in ascending id order.
///
/// Ids are unique. (category, canonical) pairs may collide before cleaning;
/// duplicate_canonicals() reports the collisions.
class LabelCatalog {
 public:
  LabelCatalog() = default;
  explicit LabelCatalog(std::vector<LabelRecord> records, std::string separator = "::");

  std::span<const LabelRecord> records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }
  const std::string& separator() const noexcept { return separator_; }

  bool contains(LabelId id) const { return by_id_.contains(id); }
  const LabelRecord* find(LabelId id) const;
  /// Throws ValidationError for unknown ids.
  const LabelRecord& at(LabelId id) const;

  /// All ids with this canonical form inside `category`, ascending.
  std::vector<LabelId> find_canonical(std::string_view category, std::string_view canonical) const;

  /// Resolves a human-written attribute name: exact attribute_name first,
  /// then canonical match of its category/name parts. Returns nullptr when
  /// nothing matches or when the canonical match is ambiguous.
  const LabelRecord* find_attribute(std::string_view attribute_name) const;

  std::vector<std::string> categories() const;
  std::vector<LabelId> ids() const;
  std::vector<LabelId> ids_in_category(std::string_view category) const;

  /// Groups of ids sharing (category, canonical), each group ascending.
  std::vector<std::vector<LabelId>> duplicate_canonicals() const;

  /// Copy without the given ids (unknown ids are ignored).
  LabelCatalog without(std::span<const LabelId> removed) const;

 private:
  static std::string key(std::string_view category, std::string_view canonical);

  std::vector<LabelRecord> records_;
  std::string separator_ = "::";
  std::unordered_map<LabelId, std::size_t> by_id_;
  std::unordered_map<std::string, std::vector<LabelId>> by_canonical_;
  std::unordered_map<std::string, LabelId> by_attribute_;
};

struct LabelFormat {
  std::string separator = "::";
  char delimiter = ',';
};

struct ParsedCatalog {
  LabelCatalog catalog;
  std::vector<Diagnostic> warnings;
};

/// Reads an `attribute_id,attribute_name` file. Throws ParseError with the
/// line number on malformed rows or duplicate ids.
ParsedCatalog parse_labels(std::istream& in, const LabelFormat& format = {}, std::string source = "labels");
void write_labels(std::ostream& out, const LabelCatalog& catalog);

struct Sample {
  std::string id;
  /// Ascending, duplicate free.
  std::vector<LabelId> labels;

  bool has(LabelId label) const;
  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Sparse sample -> label-set matrix. Keeps input sample order; sample ids
/// are unique and every label set is sorted and duplicate free.
class AnnotationSet {
 public:
  AnnotationSet() = default;
  explicit AnnotationSet(std::vector<Sample> samples);

  std::span<const Sample> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const Sample* find(std::string_view sample_id) const;

  std::size_t positive_count() const noexcept;
  /// Sample indices ordered by ascending sample id.
  std::vector<std::size_t> order_by_id() const;

  /// Throws ValidationError naming the offending samples when a label id is
  /// absent from `catalog`.
  void validate(const LabelCatalog& catalog) const;

  friend bool operator==(const AnnotationSet& a, const AnnotationSet& b) { return a.samples_ == b.samples_; }

 private:
  std::vector<Sample> samples_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class DuplicateLabelPolicy { Dedup, Error };

struct AnnotationFormat {
  DuplicateLabelPolicy duplicates = DuplicateLabelPolicy::Dedup;
  char delimiter = ',';
};

struct ParsedAnnotations {
  AnnotationSet annotations;
  std::vector<Diagnostic> warnings;
};

/// Reads an `id,attribute_ids` file and validates ids against `catalog`.
ParsedAnnotations parse_annotations(std::istream& in, const LabelCatalog& catalog,
                                    const AnnotationFormat& format = {}, std::string source = "annotations");
void write_annotations(std::ostream& out, const AnnotationSet& annotations);

}  // namespace labelbench
