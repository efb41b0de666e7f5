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

#include "labelbench/cleanse.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "labelbench/csv.hpp"
#include "parallel.hpp"

namespace labelbench {
namespace {

std::string fold_hyphens(std::string_view canonical) {
  std::string out;
  bool space = false;
  for (char c : canonical) {
    if (c == '-' || c == ' ') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

std::string join_names(const std::vector<LabelId>& ids, const LabelCatalog& catalog) {
  std::string out;
  for (LabelId id : ids) {
    if (!out.empty()) out += " | ";
    out += catalog.at(id).attribute_name;
  }
  return out;
}

}  // namespace

std::vector<DuplicateCandidate> find_duplicates(const LabelCatalog& catalog, double threshold,
                                                bool same_category_only, unsigned threads) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ValidationError(fmt::format("duplicate threshold must lie in (0, 1], got {}", threshold));
  }
  struct Entry {
    LabelId id;
    const std::string* category;
    std::u32string scalars;
    std::string folded;
  };
  std::vector<Entry> entries;
  entries.reserve(catalog.size());
  for (const auto& r : catalog.records()) {
    entries.push_back({r.id, &r.category, to_scalars(r.canonical), fold_hyphens(r.canonical)});
  }

  std::vector<std::vector<DuplicateCandidate>> found(entries.size());
  detail::parallel_chunks(entries.size(), threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto& a = entries[i];
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        const auto& b = entries[j];
        if (same_category_only && *a.category != *b.category) continue;
        if (a.folded == b.folded) {
          found[i].push_back({a.id, b.id, SimilarityScore{1.0}});
          continue;
        }
        const std::size_t longest = std::max(a.scalars.size(), b.scalars.size());
        const std::size_t shortest = std::min(a.scalars.size(), b.scalars.size());
        const double bound = 1.0 - static_cast<double>(longest - shortest) / static_cast<double>(longest);
        if (bound < threshold) continue;
        const auto score = similarity_ratio(a.scalars, b.scalars);
        if (score.value() >= threshold) found[i].push_back({a.id, b.id, score});
      }
    }
  });

  std::vector<DuplicateCandidate> pairs;
  for (auto& f : found) pairs.insert(pairs.end(), f.begin(), f.end());
  std::sort(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    if (x.score != y.score) return x.score > y.score;
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  return pairs;
}

std::vector<HierarchyCandidate> find_hierarchy_candidates(const LabelCatalog& catalog) {
  std::map<std::string, std::vector<std::pair<LabelId, std::vector<std::string>>>> by_category;
  for (const auto& r : catalog.records()) by_category[r.category].emplace_back(r.id, tokenize(r.name));

  std::vector<HierarchyCandidate> out;
  for (const auto& [category, labels] : by_category) {
    for (const auto& [super_id, super_tokens] : labels) {
      if (super_tokens.empty()) continue;
      for (const auto& [sub_id, sub_tokens] : labels) {
        if (sub_tokens.size() <= super_tokens.size()) continue;
        const auto it = std::search(sub_tokens.begin(), sub_tokens.end(), super_tokens.begin(), super_tokens.end());
        if (it == sub_tokens.end()) continue;
        out.push_back({super_id, sub_id,
                       fmt::format("'{}' at word {} of '{}'", join_tokens(super_tokens),
                                   std::distance(sub_tokens.begin(), it) + 1, join_tokens(sub_tokens))});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.super != b.super ? a.super < b.super : a.sub < b.sub;
  });
  return out;
}

std::vector<ConnectiveSplit> connective_splits(const LabelCatalog& catalog, Connective connective) {
  std::vector<ConnectiveSplit> out;
  for (const auto& r : catalog.records()) {
    auto tokens = split_connective(r.name, connective);
    if (tokens.size() < 2) continue;
    out.push_back(resolve_split(r.id, connective, std::move(tokens), r.category, catalog));
  }
  return out;
}

ConnectiveTally classify_connectives(const LabelCatalog& catalog, Connective connective) {
  ConnectiveTally tally;
  tally.connective = connective;
  tally.items = connective_splits(catalog, connective);
  tally.total = tally.items.size();
  for (const auto& s : tally.items) {
    switch (s.split_class) {
      case SplitClass::AllResolved:
        ++tally.all_resolved;
        break;
      case SplitClass::NoneResolved:
        ++tally.none_resolved;
        break;
      case SplitClass::Partial:
        ++tally.partial;
        break;
    }
  }
  return tally;
}

std::vector<AndSplit> and_splits_from(const ConnectiveTally& tally, bool all_resolved_only) {
  std::vector<AndSplit> out;
  for (const auto& s : tally.items) {
    const bool all = s.split_class == SplitClass::AllResolved;
    if (s.split_class == SplitClass::NoneResolved || (all_resolved_only && !all)) continue;
    out.push_back({s.source, s.resolved_ids(), all});
  }
  return out;
}

std::vector<OrGroup> or_groups_from(const ConnectiveTally& tally) {
  std::vector<OrGroup> out;
  for (const auto& s : tally.items) {
    if (s.split_class == SplitClass::NoneResolved) continue;
    out.push_back({s.source, s.resolved_ids()});
  }
  return out;
}

Transformed apply_merges(const AnnotationSet& annotations, const LabelCatalog& catalog,
                         const std::vector<Merge>& merges) {
  TransformPlan only;
  only.merges = merges;
  validate_plan(only, catalog);

  std::unordered_map<LabelId, LabelId> target;
  std::vector<LabelId> removed;
  for (const auto& m : merges) {
    for (LabelId a : m.absorbed) {
      target.emplace(a, m.survivor);
      removed.push_back(a);
    }
  }
  std::vector<Sample> samples(annotations.samples().begin(), annotations.samples().end());
  for (auto& s : samples) {
    for (auto& l : s.labels) {
      if (const auto it = target.find(l); it != target.end()) l = it->second;
    }
  }
  return {AnnotationSet(std::move(samples)), catalog.without(removed)};
}

AnnotationSet propagate_supercategories(const AnnotationSet& annotations, const std::vector<HierarchyEdge>& edges,
                                        PropagationMode mode) {
  check_acyclic(edges);
  std::unordered_map<LabelId, std::vector<LabelId>> parents;
  for (const auto& e : edges) parents[e.sub].push_back(e.super);

  std::unordered_map<LabelId, std::vector<LabelId>> ancestors;
  std::function<const std::vector<LabelId>&(LabelId)> closure = [&](LabelId id) -> const std::vector<LabelId>& {
    if (const auto it = ancestors.find(id); it != ancestors.end()) return it->second;
    std::vector<LabelId> all;
    if (const auto it = parents.find(id); it != parents.end()) {
      for (LabelId p : it->second) {
        all.push_back(p);
        if (mode == PropagationMode::Transitive) {
          const auto& up = closure(p);
          all.insert(all.end(), up.begin(), up.end());
        }
      }
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return ancestors.emplace(id, std::move(all)).first->second;
  };

  std::vector<Sample> samples(annotations.samples().begin(), annotations.samples().end());
  for (auto& s : samples) {
    const std::size_t n = s.labels.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!parents.contains(s.labels[i])) continue;
      const auto& up = closure(s.labels[i]);
      s.labels.insert(s.labels.end(), up.begin(), up.end());
    }
  }
  return AnnotationSet(std::move(samples));
}

Transformed apply_and_splits(const AnnotationSet& annotations, const LabelCatalog& catalog,
                             const std::vector<AndSplit>& splits) {
  TransformPlan only;
  only.and_splits = splits;
  validate_plan(only, catalog);

  std::unordered_map<LabelId, std::vector<const AndSplit*>> by_source;
  std::unordered_set<LabelId> removed;
  for (const auto& s : splits) {
    by_source[s.source].push_back(&s);
    if (s.remove_source) removed.insert(s.source);
  }

  std::vector<Sample> samples(annotations.samples().begin(), annotations.samples().end());
  for (auto& sample : samples) {
    std::vector<LabelId> labels;
    for (LabelId l : sample.labels) {
      if (const auto it = by_source.find(l); it != by_source.end()) {
        for (const auto* s : it->second) labels.insert(labels.end(), s->tokens.begin(), s->tokens.end());
      }
      if (!removed.contains(l)) labels.push_back(l);
    }
    sample.labels = std::move(labels);
  }
  std::vector<LabelId> gone(removed.begin(), removed.end());
  return {AnnotationSet(std::move(samples)), catalog.without(gone)};
}

Transformed apply_plan(const AnnotationSet& annotations, const LabelCatalog& catalog, const TransformPlan& plan,
                       PropagationMode mode) {
  validate_plan(plan, catalog);
  auto [merged, merged_catalog] = apply_merges(annotations, catalog, plan.merges);

  // Later steps name labels of the original catalog; point absorbed ids at
  // their survivors.
  std::unordered_map<LabelId, LabelId> target;
  for (const auto& m : plan.merges) {
    for (LabelId a : m.absorbed) target.emplace(a, m.survivor);
  }
  const auto remap = [&](LabelId id) {
    const auto it = target.find(id);
    return it == target.end() ? id : it->second;
  };

  std::vector<AndSplit> splits;
  for (auto s : plan.and_splits) {
    s.source = remap(s.source);
    for (auto& t : s.tokens) t = remap(t);
    std::sort(s.tokens.begin(), s.tokens.end());
    s.tokens.erase(std::unique(s.tokens.begin(), s.tokens.end()), s.tokens.end());
    std::erase(s.tokens, s.source);
    splits.push_back(std::move(s));
  }
  auto [split, split_catalog] = apply_and_splits(merged, merged_catalog, splits);

  std::set<HierarchyEdge> edges;
  for (const auto& e : plan.hierarchy_edges) {
    const HierarchyEdge mapped{remap(e.super), remap(e.sub)};
    if (mapped.super != mapped.sub && split_catalog.contains(mapped.super) && split_catalog.contains(mapped.sub)) {
      edges.insert(mapped);
    }
  }
  auto propagated =
      propagate_supercategories(split, std::vector<HierarchyEdge>(edges.begin(), edges.end()), mode);
  return {std::move(propagated), std::move(split_catalog)};
}

void write_duplicate_candidates(std::ostream& out, const std::vector<DuplicateCandidate>& pairs,
                                const LabelCatalog& catalog) {
  csv::write_row(out, {"first_id", "first_name", "second_id", "second_name", "score"});
  for (const auto& p : pairs) {
    csv::write_row(out, {std::to_string(raw(p.first)), catalog.at(p.first).attribute_name,
                         std::to_string(raw(p.second)), catalog.at(p.second).attribute_name,
                         fmt::format("{:.4f}", p.score.value())});
  }
}

void write_hierarchy_candidates(std::ostream& out, const std::vector<HierarchyCandidate>& candidates,
                                const LabelCatalog& catalog) {
  csv::write_row(out, {"super_id", "super_name", "sub_id", "sub_name", "evidence"});
  for (const auto& c : candidates) {
    csv::write_row(out, {std::to_string(raw(c.super)), catalog.at(c.super).attribute_name, std::to_string(raw(c.sub)),
                         catalog.at(c.sub).attribute_name, c.evidence});
  }
}

void write_split_candidates(std::ostream& out, const std::vector<ConnectiveSplit>& splits,
                            const LabelCatalog& catalog) {
  csv::write_row(out, {"source_id", "source_name", "connective", "class", "tokens", "resolved"});
  for (const auto& s : splits) {
    std::string tokens;
    for (const auto& t : s.tokens) tokens += (tokens.empty() ? "" : " | ") + t;
    csv::write_row(out, {std::to_string(raw(s.source)), catalog.at(s.source).attribute_name,
                         std::string(to_string(s.connective)), std::string(to_string(s.split_class)), tokens,
                         join_names(s.resolved_ids(), catalog)});
  }
}

}  // namespace labelbench
