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

#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "labelbench/catalog.hpp"
#include "labelbench/plan.hpp"

namespace labelbench {

using Hops = std::uint32_t;
inline constexpr Hops kUnreachable = std::numeric_limits<Hops>::max();

using LabelEdge = std::pair<LabelId, LabelId>;

/// Undirected, unweighted label graph. Immutable once built; distance
/// queries are safe from any number of threads.
class RelationGraph {
 public:
  /// Node sets up to this size get an all-pairs hop table at construction.
  static constexpr std::size_t kAllPairsLimit = 4096;

  RelationGraph() = default;
  /// Edges are deduplicated regardless of orientation. Throws
  /// ValidationError on self-edges or endpoints missing from `nodes`.
  RelationGraph(std::vector<LabelId> nodes, std::vector<LabelEdge> edges);

  std::span<const LabelId> nodes() const noexcept { return nodes_; }
  bool contains(LabelId id) const { return index_.contains(id); }
  std::span<const LabelId> neighbors(LabelId id) const;
  std::size_t edge_count() const noexcept { return edge_count_; }
  /// Each edge once as (low, high), ascending.
  std::vector<LabelEdge> edges() const;

  /// Hop count, kUnreachable when disconnected. Ids outside the graph are
  /// isolated: 0 to themselves, unreachable otherwise.
  Hops distance(LabelId a, LabelId b) const;

  /// Component sizes, descending.
  std::vector<std::size_t> component_sizes() const;

 private:
  std::vector<Hops> bfs(std::size_t source) const;

  std::vector<LabelId> nodes_;
  std::unordered_map<LabelId, std::size_t> index_;
  std::vector<std::vector<LabelId>> adjacency_;
  std::vector<std::vector<std::size_t>> adjacency_index_;
  std::size_t edge_count_ = 0;
  std::vector<Hops> all_pairs_;
};

/// Credit 1 / (d + 1); zero for unreachable pairs.
double proximity(Hops hops) noexcept;

/// Curated edge file: two attribute_name columns per row, '#' comments and
/// blank lines ignored, optional `label_a,label_b` header. Unknown names and
/// self-edges are ParseErrors with line numbers.
std::vector<LabelEdge> parse_curated_edges(std::istream& in, const LabelCatalog& catalog,
                                           std::string source = "edges");

/// Nodes: every catalog label (restricted to `category` when given).
/// Edges: connective source <-> each resolved component, plus curated edges;
/// edges leaving the scope are dropped.
RelationGraph build_graph(const LabelCatalog& catalog, std::span<const OrGroup> or_groups,
                          std::span<const AndSplit> and_splits, std::span<const LabelEdge> curated,
                          const std::optional<std::string>& category = std::nullopt);

/// Edge list in curated-edge format, so an export can be fed back in.
void write_edge_list(std::ostream& out, const RelationGraph& graph, const LabelCatalog& catalog);

}  // namespace labelbench
