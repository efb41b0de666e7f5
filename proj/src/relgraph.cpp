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

#include "labelbench/relgraph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <fmt/format.h>

#include "labelbench/csv.hpp"

namespace labelbench {

RelationGraph::RelationGraph(std::vector<LabelId> nodes, std::vector<LabelEdge> edges) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);

  std::set<LabelEdge> unique;
  for (auto [a, b] : edges) {
    if (a == b) throw ValidationError(fmt::format("self-edge on attribute {}", raw(a)));
    if (!contains(a) || !contains(b)) {
      throw ValidationError(fmt::format("edge ({}, {}) leaves the node set", raw(a), raw(b)));
    }
    unique.insert(a < b ? LabelEdge{a, b} : LabelEdge{b, a});
  }
  edge_count_ = unique.size();

  adjacency_.resize(nodes_.size());
  for (const auto& [a, b] : unique) {
    adjacency_[index_.at(a)].push_back(b);
    adjacency_[index_.at(b)].push_back(a);
  }
  adjacency_index_.resize(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::sort(adjacency_[i].begin(), adjacency_[i].end());
    for (LabelId n : adjacency_[i]) adjacency_index_[i].push_back(index_.at(n));
  }

  if (nodes_.size() <= kAllPairsLimit) {
    all_pairs_.resize(nodes_.size() * nodes_.size(), kUnreachable);
    for (std::size_t s = 0; s < nodes_.size(); ++s) {
      // Edgeless nodes only reach themselves.
      if (adjacency_[s].empty()) {
        all_pairs_[s * nodes_.size() + s] = 0;
        continue;
      }
      const auto row = bfs(s);
      std::copy(row.begin(), row.end(), all_pairs_.begin() + static_cast<std::ptrdiff_t>(s * nodes_.size()));
    }
  }
}

std::span<const LabelId> RelationGraph::neighbors(LabelId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return {};
  return adjacency_[it->second];
}

std::vector<LabelEdge> RelationGraph::edges() const {
  std::vector<LabelEdge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (LabelId n : adjacency_[i]) {
      if (nodes_[i] < n) out.emplace_back(nodes_[i], n);
    }
  }
  return out;
}

std::vector<Hops> RelationGraph::bfs(std::size_t source) const {
  std::vector<Hops> dist(nodes_.size(), kUnreachable);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    for (std::size_t v : adjacency_index_[u]) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

Hops RelationGraph::distance(LabelId a, LabelId b) const {
  if (a == b) return 0;
  const auto ia = index_.find(a);
  const auto ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end()) return kUnreachable;
  if (!all_pairs_.empty()) return all_pairs_[ia->second * nodes_.size() + ib->second];
  return bfs(ia->second)[ib->second];
}

std::vector<std::size_t> RelationGraph::component_sizes() const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<std::size_t> sizes;
  for (std::size_t s = 0; s < nodes_.size(); ++s) {
    if (seen[s]) continue;
    std::size_t size = 0;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      ++size;
      for (std::size_t v : adjacency_index_[u]) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

double proximity(Hops hops) noexcept {
  return hops == kUnreachable ? 0.0 : 1.0 / (static_cast<double>(hops) + 1.0);
}

std::vector<LabelEdge> parse_curated_edges(std::istream& in, const LabelCatalog& catalog, std::string source) {
  csv::Reader reader(in);
  std::vector<std::string> fields;
  std::vector<LabelEdge> edges;
  bool first = true;
  while (reader.next(fields)) {
    const bool blank = fields.size() == 1 && fields[0].find_first_not_of(" \t") == std::string::npos;
    if (blank || (!fields.empty() && fields[0].starts_with("#"))) continue;
    if (first && fields.size() == 2 && fields[0] == "label_a" && fields[1] == "label_b") {
      first = false;
      continue;
    }
    first = false;
    if (fields.size() != 2) {
      throw ParseError(source, reader.line(), fmt::format("expected 2 columns, found {}", fields.size()));
    }
    const auto* a = catalog.find_attribute(fields[0]);
    const auto* b = catalog.find_attribute(fields[1]);
    if (!a) throw ParseError(source, reader.line(), fmt::format("unknown attribute '{}'", fields[0]));
    if (!b) throw ParseError(source, reader.line(), fmt::format("unknown attribute '{}'", fields[1]));
    if (a->id == b->id) throw ParseError(source, reader.line(), fmt::format("self-edge on '{}'", fields[0]));
    edges.emplace_back(a->id, b->id);
  }
  return edges;
}

RelationGraph build_graph(const LabelCatalog& catalog, std::span<const OrGroup> or_groups,
                          std::span<const AndSplit> and_splits, std::span<const LabelEdge> curated,
                          const std::optional<std::string>& category) {
  std::vector<LabelId> nodes = category ? catalog.ids_in_category(*category) : catalog.ids();
  const std::set<LabelId> in_scope(nodes.begin(), nodes.end());

  for (const auto& [a, b] : curated) {
    catalog.at(a);
    catalog.at(b);
    if (a == b) throw ValidationError(fmt::format("curated self-edge on attribute {}", raw(a)));
  }

  std::vector<LabelEdge> edges;
  const auto add = [&](LabelId a, LabelId b) {
    if (a != b && in_scope.contains(a) && in_scope.contains(b)) edges.emplace_back(a, b);
  };
  for (const auto& g : or_groups) {
    for (LabelId c : g.components) add(g.source, c);
  }
  for (const auto& s : and_splits) {
    for (LabelId t : s.tokens) add(s.source, t);
  }
  for (const auto& [a, b] : curated) add(a, b);
  return RelationGraph(std::move(nodes), std::move(edges));
}

void write_edge_list(std::ostream& out, const RelationGraph& graph, const LabelCatalog& catalog) {
  csv::write_row(out, {"label_a", "label_b"});
  for (const auto& [a, b] : graph.edges()) {
    csv::write_row(out, {catalog.at(a).attribute_name, catalog.at(b).attribute_name});
  }
}

}  // namespace labelbench
