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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labelbench/metrics.hpp"

namespace labelbench {

inline constexpr double kDefaultEpsilon = 1e-4;

struct ModelScore {
  std::string tag;
  double f = 0.0;
  double g = 0.0;
};

/// Two measures f and g evaluated on the same models. At least two models,
/// unique tags, finite scores.
class ModelFamily {
 public:
  explicit ModelFamily(std::vector<ModelScore> entries);

  std::span<const ModelScore> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  /// Same models with the roles of f and g exchanged.
  ModelFamily swapped() const;

 private:
  std::vector<ModelScore> entries_;
};

/// `model,f_score,g_score` rows.
ModelFamily parse_family(std::istream& in, std::string source = "family");
void write_family(std::ostream& out, const ModelFamily& family);

/// Family built from a threshold sweep: f = graph micro F, g = flat micro F.
ModelFamily family_from_sweep(std::span<const SweepPoint> points);

/// Which pairs count as inconsistent.
enum class InconsistencyRule {
  /// S holds pairs ordered oppositely by f and g. DoC is then symmetric.
  Discordant,
  /// S also holds pairs f separates while g ties (g(A) <= g(B)).
  IncludeTies,
};

struct ComparisonReport {
  std::size_t r_count = 0;
  std::size_t s_count = 0;
  std::size_t p_count = 0;
  std::size_t q_count = 0;
  /// Pairs tied under both measures; in none of R, S, P, Q.
  std::size_t skipped = 0;
  std::size_t pair_total = 0;
  double epsilon = kDefaultEpsilon;
  InconsistencyRule rule = InconsistencyRule::Discordant;
  /// R / (R + S); NaN when R + S = 0.
  double doc = 0.0;
  /// P / Q; +inf when only Q = 0, NaN when P = Q = 0.
  double dod = 0.0;
};

/// Pairwise comparison of f and g over every unordered model pair. Two
/// scores within `epsilon` of each other count as tied. Pairs are oriented
/// so f increases:
///   R: g increases too;  S: g decreases (see InconsistencyRule);
///   P: f separates, g ties;  Q: g separates, f ties.
ComparisonReport compare(const ModelFamily& family, double epsilon = kDefaultEpsilon,
                         InconsistencyRule rule = InconsistencyRule::Discordant);

enum class Verdict { FBetter, GBetter, Inconclusive };

std::string_view to_string(Verdict verdict) noexcept;
std::string_view to_string(InconsistencyRule rule) noexcept;

/// f is better when DoC > 0.5 and DoD > 1; g is better when DoC > 0.5 and
/// DoD(g, f) = 1 / DoD > 1. Anything else, including undefined values, is
/// inconclusive.
Verdict interpret(const ComparisonReport& report);

}  // namespace labelbench
