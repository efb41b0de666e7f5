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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "labelbench/types.hpp"

namespace labelbench {

class LabelCatalog;

/// Decodes UTF-8 into Unicode scalar values. Ill-formed sequences decode to
/// U+FFFD, one replacement per maximal ill-formed subpart.
std::u32string to_scalars(std::string_view utf8);

/// Lowercase, NFC, whitespace runs collapsed to one space, trimmed.
/// Idempotent. Hyphens and punctuation are left alone.
std::string canonicalize(std::string_view name);

/// Unit-cost Levenshtein distance over Unicode scalar values.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Similarity in [0, 1]; 1 iff the strings are equal.
class SimilarityScore {
 public:
  constexpr SimilarityScore() = default;
  explicit constexpr SimilarityScore(double value) : value_(value) {}
  constexpr double value() const noexcept { return value_; }
  friend constexpr auto operator<=>(SimilarityScore, SimilarityScore) = default;

 private:
  double value_ = 0.0;
};

/// 1 - d(a, b) / max(|a|, |b|) with lengths in scalar values; 1 for two
/// empty strings.
SimilarityScore similarity_ratio(std::u32string_view a, std::u32string_view b);
SimilarityScore similarity_ratio(std::string_view a, std::string_view b);

enum class Connective { And, Or };

std::string_view to_string(Connective connective) noexcept;
std::optional<Connective> parse_connective(std::string_view text) noexcept;

/// Splits `name` on the standalone connective word. When the word occurs,
/// commas act as additional separators ("a, b and c" -> a, b, c); otherwise
/// commas are kept. Tokens are trimmed and whitespace-collapsed, empty tokens
/// dropped. Without a connective the (trimmed) name is returned as the only
/// token.
std::vector<std::string> split_connective(std::string_view name, Connective connective);

/// Lowercase word tokens, split on whitespace and ASCII punctuation.
std::vector<std::string> tokenize(std::string_view name);

enum class SplitClass { AllResolved, NoneResolved, Partial };

std::string_view to_string(SplitClass split_class) noexcept;

struct ConnectiveSplit {
  LabelId source{};
  Connective connective = Connective::And;
  std::vector<std::string> tokens;
  std::vector<std::optional<LabelId>> resolution;
  SplitClass split_class = SplitClass::NoneResolved;

  std::vector<LabelId> resolved_ids() const;
};

/// Looks each token up by canonical form within `category`. When a category
/// holds several labels with the same canonical form the lowest id wins.
ConnectiveSplit resolve_split(LabelId source, Connective connective, std::vector<std::string> tokens,
                              std::string_view category, const LabelCatalog& catalog);

}  // namespace labelbench
