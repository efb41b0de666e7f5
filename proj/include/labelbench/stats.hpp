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

#include <map>
#include <span>
#include <string>

#include "labelbench/catalog.hpp"

namespace labelbench {

struct CorpusStats {
  std::size_t label_count = 0;
  std::size_t sample_count = 0;
  std::size_t positive_annotations = 0;
  /// Number of labels per category.
  std::map<std::string, std::size_t> per_category_counts;
  /// Positive-sample count for every catalog label, zeros included.
  std::map<LabelId, std::size_t> per_label_frequency;
  /// labels-per-sample -> number of samples.
  std::map<std::size_t, std::size_t> labels_per_sample_histogram;
  /// Lower median; 0 for an empty set.
  std::size_t median_labels_per_sample = 0;
  /// Samples holding at least one label of the category.
  std::map<std::string, std::size_t> category_coverage;
};

CorpusStats compute_stats(const AnnotationSet& annotations, const LabelCatalog& catalog);

/// Lower median of a count histogram.
std::size_t histogram_lower_median(const std::map<std::size_t, std::size_t>& histogram);

/// Samples holding at least one label from `subset`.
std::size_t coverage_count(const AnnotationSet& annotations, std::span<const LabelId> subset);
double coverage(const AnnotationSet& annotations, std::span<const LabelId> subset);

struct Cooccurrence {
  std::size_t count_a = 0;
  std::size_t count_b = 0;
  std::size_t count_both = 0;

  friend bool operator==(const Cooccurrence&, const Cooccurrence&) = default;
};

/// Throws ValidationError when a == b or either id is not in `catalog`.
Cooccurrence cooccurrence(const AnnotationSet& annotations, const LabelCatalog& catalog, LabelId a, LabelId b);

/// Positive-sample count of a single label.
std::size_t frequency(const AnnotationSet& annotations, LabelId label);

}  // namespace labelbench
