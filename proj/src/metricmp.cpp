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

#include "labelbench/metricmp.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_set>

#include <fmt/format.h>

#include "labelbench/csv.hpp"

namespace labelbench {

ModelFamily::ModelFamily(std::vector<ModelScore> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2) {
    throw ValidationError(fmt::format("a model family needs at least 2 models, got {}", entries_.size()));
  }
  std::unordered_set<std::string> tags;
  for (const auto& e : entries_) {
    if (!tags.insert(e.tag).second) throw ValidationError(fmt::format("duplicate model tag '{}'", e.tag));
    if (!std::isfinite(e.f) || !std::isfinite(e.g)) {
      throw ValidationError(fmt::format("model '{}' has a non-finite score", e.tag));
    }
  }
}

ModelFamily ModelFamily::swapped() const {
  std::vector<ModelScore> out(entries_.begin(), entries_.end());
  for (auto& e : out) std::swap(e.f, e.g);
  return ModelFamily(std::move(out));
}

ModelFamily parse_family(std::istream& in, std::string source) {
  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields != std::vector<std::string>{"model", "f_score", "g_score"}) {
    throw ParseError(source, 1, "expected header 'model,f_score,g_score'");
  }
  std::vector<ModelScore> entries;
  const auto number = [&](const std::string& text) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || p != text.data() + text.size()) {
      throw ParseError(source, reader.line(), fmt::format("invalid score '{}'", text));
    }
    return v;
  };
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 3) {
      throw ParseError(source, reader.line(), fmt::format("expected 3 columns, found {}", fields.size()));
    }
    entries.push_back({fields[0], number(fields[1]), number(fields[2])});
  }
  try {
    return ModelFamily(std::move(entries));
  } catch (const ValidationError& e) {
    throw ParseError(source, 0, e.what());
  }
}

void write_family(std::ostream& out, const ModelFamily& family) {
  out << "model,f_score,g_score\n";
  for (const auto& e : family.entries()) {
    out << csv::escape(e.tag) << ',' << fmt::format("{:.17g},{:.17g}", e.f, e.g) << '\n';
  }
}

ModelFamily family_from_sweep(std::span<const SweepPoint> points) {
  std::vector<ModelScore> entries;
  for (std::size_t i = 0; i < points.size(); ++i) {
    entries.push_back({fmt::format("t{:03d}={:.6g}", i, points[i].threshold), points[i].graph.micro_f,
                       points[i].flat.micro_f});
  }
  return ModelFamily(std::move(entries));
}

ComparisonReport compare(const ModelFamily& family, double epsilon, InconsistencyRule rule) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ValidationError(fmt::format("epsilon must be a finite value >= 0, got {}", epsilon));
  }
  ComparisonReport report;
  report.epsilon = epsilon;
  report.rule = rule;

  const auto models = family.entries();
  for (std::size_t i = 0; i < models.size(); ++i) {
    for (std::size_t j = i + 1; j < models.size(); ++j) {
      ++report.pair_total;
      double df = models[j].f - models[i].f;
      double dg = models[j].g - models[i].g;
      const bool f_tie = std::abs(df) <= epsilon;
      const bool g_tie = std::abs(dg) <= epsilon;
      if (f_tie && g_tie) {
        ++report.skipped;
        continue;
      }
      if (f_tie) {
        ++report.q_count;
        continue;
      }
      if (df < 0) dg = -dg;
      if (g_tie) {
        ++report.p_count;
        if (rule == InconsistencyRule::IncludeTies) ++report.s_count;
      } else if (dg > 0) {
        ++report.r_count;
      } else {
        ++report.s_count;
      }
    }
  }

  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t ordered = report.r_count + report.s_count;
  report.doc = ordered ? static_cast<double>(report.r_count) / static_cast<double>(ordered) : nan;
  if (report.q_count) {
    report.dod = static_cast<double>(report.p_count) / static_cast<double>(report.q_count);
  } else {
    report.dod = report.p_count ? std::numeric_limits<double>::infinity() : nan;
  }
  return report;
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::FBetter:
      return "f_better";
    case Verdict::GBetter:
      return "g_better";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(InconsistencyRule rule) noexcept {
  return rule == InconsistencyRule::Discordant ? "discordant" : "include_ties";
}

Verdict interpret(const ComparisonReport& report) {
  if (std::isnan(report.doc) || std::isnan(report.dod) || !(report.doc > 0.5)) return Verdict::Inconclusive;
  if (report.dod > 1.0) return Verdict::FBetter;
  if (report.dod < 1.0) return Verdict::GBetter;
  return Verdict::Inconclusive;
}

}  // namespace labelbench
