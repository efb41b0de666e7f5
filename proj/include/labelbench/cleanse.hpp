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

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "labelbench/catalog.hpp"
#include "labelbench/plan.hpp"
#include "labelbench/textkit.hpp"

namespace labelbench {

inline constexpr double kDefaultDuplicateThreshold = 0.90;

struct DuplicateCandidate {
  LabelId first{};
  LabelId second{};
  SimilarityScore score;
};

struct HierarchyCandidate {
  LabelId super{};
  LabelId sub{};
  std::string evidence;
};

struct CandidateReport {
  std::vector<DuplicateCandidate> duplicate_pairs;
  std::vector<HierarchyCandidate> hierarchy_candidates;
  std::vector<ConnectiveSplit> split_candidates;
};

/// Every unordered pair (first < second) whose name similarity reaches
/// `threshold`, scored on canonical names. Pairs equal after folding hyphens
/// to spaces score 1. Sorted by descending score, then ids.
///
/// Throws ValidationError unless 0 < threshold <= 1.
std::vector<DuplicateCandidate> find_duplicates(const LabelCatalog& catalog, double threshold,
                                                bool same_category_only, unsigned threads = 1);

/// (A, B) within one category where A's word tokens form a strict contiguous
/// run inside B's. Multiple parents per sub are reported.
std::vector<HierarchyCandidate> find_hierarchy_candidates(const LabelCatalog& catalog);

/// Labels whose names contain the connective word, resolved within their
/// category, in ascending id order.
std::vector<ConnectiveSplit> connective_splits(const LabelCatalog& catalog, Connective connective);

struct ConnectiveTally {
  Connective connective = Connective::And;
  std::size_t total = 0;
  std::size_t all_resolved = 0;
  std::size_t none_resolved = 0;
  std::size_t partial = 0;
  std::vector<ConnectiveSplit> items;
};

ConnectiveTally classify_connectives(const LabelCatalog& catalog, Connective connective);

/// Plan fragments derived from connective tallies: an and-split for every
/// split with at least one resolved token (remove_source only for fully
/// resolved ones), and an or-group likewise.
std::vector<AndSplit> and_splits_from(const ConnectiveTally& tally, bool all_resolved_only);
std::vector<OrGroup> or_groups_from(const ConnectiveTally& tally);

using Transformed = std::pair<AnnotationSet, LabelCatalog>;

/// Rewrites absorbed ids to their survivor and drops them from the catalog.
Transformed apply_merges(const AnnotationSet& annotations, const LabelCatalog& catalog, const std::vector<Merge>& merges);

enum class PropagationMode { Transitive, Direct };

/// Adds every super label of every label a sample carries. Direct mode adds
/// only immediate parents. Throws ValidationError on a cycle.
AnnotationSet propagate_supercategories(const AnnotationSet& annotations, const std::vector<HierarchyEdge>& edges,
                                        PropagationMode mode = PropagationMode::Transitive);

/// Adds resolved token ids wherever a split source occurs; sources flagged
/// remove_source disappear from samples and catalog.
Transformed apply_and_splits(const AnnotationSet& annotations, const LabelCatalog& catalog,
                             const std::vector<AndSplit>& splits);

/// Full plan in the fixed order merges, and-splits, propagation. Or-groups
/// and exclusion groups only affect evaluation and are not applied here.
Transformed apply_plan(const AnnotationSet& annotations, const LabelCatalog& catalog, const TransformPlan& plan,
                       PropagationMode mode = PropagationMode::Transitive);

/// Candidate file: header row, one candidate per row, scores with four
/// decimals.
void write_duplicate_candidates(std::ostream& out, const std::vector<DuplicateCandidate>& pairs,
                                const LabelCatalog& catalog);
void write_hierarchy_candidates(std::ostream& out, const std::vector<HierarchyCandidate>& candidates,
                                const LabelCatalog& catalog);
void write_split_candidates(std::ostream& out, const std::vector<ConnectiveSplit>& splits, const LabelCatalog& catalog);

}  // namespace labelbench
