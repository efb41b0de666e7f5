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

#include "labelbench/stats.hpp"

#include <algorithm>
#include <unordered_set>

#include <fmt/format.h>

namespace labelbench {

std::size_t histogram_lower_median(const std::map<std::size_t, std::size_t>& histogram) {
  std::size_t total = 0;
  for (const auto& [k, n] : histogram) total += n;
  if (total == 0) return 0;
  const std::size_t target = (total - 1) / 2;
  std::size_t seen = 0;
  for (const auto& [k, n] : histogram) {
    seen += n;
    if (seen > target) return k;
  }
  return histogram.rbegin()->first;
}

CorpusStats compute_stats(const AnnotationSet& annotations, const LabelCatalog& catalog) {
  annotations.validate(catalog);

  CorpusStats stats;
  stats.label_count = catalog.size();
  stats.sample_count = annotations.size();

  std::unordered_map<LabelId, const LabelRecord*> records;
  for (const auto& r : catalog.records()) {
    ++stats.per_category_counts[r.category];
    stats.per_label_frequency[r.id] = 0;
    stats.category_coverage[r.category] = 0;
    records.emplace(r.id, &r);
  }

  for (const auto& sample : annotations.samples()) {
    stats.positive_annotations += sample.labels.size();
    ++stats.labels_per_sample_histogram[sample.labels.size()];
    std::vector<std::string_view> covered;
    for (LabelId l : sample.labels) {
      ++stats.per_label_frequency[l];
      covered.push_back(records.at(l)->category);
    }
    std::sort(covered.begin(), covered.end());
    covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
    for (auto category : covered) ++stats.category_coverage[std::string(category)];
  }
  stats.median_labels_per_sample = histogram_lower_median(stats.labels_per_sample_histogram);
  return stats;
}

std::size_t coverage_count(const AnnotationSet& annotations, std::span<const LabelId> subset) {
  const std::unordered_set<LabelId> wanted(subset.begin(), subset.end());
  std::size_t n = 0;
  for (const auto& sample : annotations.samples()) {
    if (std::any_of(sample.labels.begin(), sample.labels.end(), [&](LabelId l) { return wanted.contains(l); })) ++n;
  }
  return n;
}

double coverage(const AnnotationSet& annotations, std::span<const LabelId> subset) {
  if (annotations.size() == 0) return 0.0;
  return static_cast<double>(coverage_count(annotations, subset)) / static_cast<double>(annotations.size());
}

Cooccurrence cooccurrence(const AnnotationSet& annotations, const LabelCatalog& catalog, LabelId a, LabelId b) {
  if (a == b) throw ValidationError(fmt::format("co-occurrence needs two distinct ids (got {} twice)", raw(a)));
  catalog.at(a);
  catalog.at(b);
  Cooccurrence c;
  for (const auto& sample : annotations.samples()) {
    const bool has_a = sample.has(a);
    const bool has_b = sample.has(b);
    c.count_a += has_a;
    c.count_b += has_b;
    c.count_both += has_a && has_b;
  }
  return c;
}

std::size_t frequency(const AnnotationSet& annotations, LabelId label) {
  std::size_t n = 0;
  for (const auto& sample : annotations.samples()) n += sample.has(label);
  return n;
}

}  // namespace labelbench
