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
#include <vector>

#include "labelbench/catalog.hpp"

namespace labelbench {

struct Merge {
  LabelId survivor{};
  std::vector<LabelId> absorbed;
};

struct HierarchyEdge {
  LabelId super{};
  LabelId sub{};

  friend auto operator<=>(const HierarchyEdge&, const HierarchyEdge&) = default;
};

struct AndSplit {
  LabelId source{};
  std::vector<LabelId> tokens;
  bool remove_source = false;
};

struct OrGroup {
  LabelId source{};
  std::vector<LabelId> components;
};

/// Human-verified cleaning operations. Produced by review of candidate
/// reports, stored as JSON that names labels by attribute_name.
struct TransformPlan {
  std::vector<Merge> merges;
  std::vector<HierarchyEdge> hierarchy_edges;
  std::vector<AndSplit> and_splits;
  std::vector<OrGroup> or_groups;
  std::vector<std::vector<LabelId>> exclusion_groups;
};

/// Checks every plan invariant against `catalog` and throws ValidationError
/// on the first violation:
///  - all ids known; no self merges; an id is absorbed at most once and never
///    both survivor and absorbed;
///  - hierarchy edges acyclic (multiple parents are fine);
///  - remove_source only on splits whose name fully resolves;
///  - exclusion groups pairwise disjoint.
void validate_plan(const TransformPlan& plan, const LabelCatalog& catalog);

/// Throws ValidationError naming the cycle when the edges are not a DAG.
void check_acyclic(const std::vector<HierarchyEdge>& edges);

/// Parses plan JSON, resolving attribute names against `catalog`. Unknown
/// names are hard errors. The result is validated.
TransformPlan load_plan(std::istream& in, const LabelCatalog& catalog);
void save_plan(std::ostream& out, const TransformPlan& plan, const LabelCatalog& catalog);

}  // namespace labelbench
