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

#include "labelbench/plan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "json.hpp"
#include "labelbench/textkit.hpp"

namespace labelbench {
namespace {

using nlohmann::json;

std::string describe(const LabelCatalog& catalog, LabelId id) {
  const auto* r = catalog.find(id);
  return r ? fmt::format("{} ({})", r->attribute_name, raw(id)) : fmt::format("#{}", raw(id));
}

void require_known(const LabelCatalog& catalog, LabelId id, std::string_view where) {
  if (!catalog.contains(id)) throw ValidationError(fmt::format("{}: unknown attribute id {}", where, raw(id)));
}

LabelId resolve(const json& value, const LabelCatalog& catalog, std::string_view where) {
  if (!value.is_string()) throw ValidationError(fmt::format("{}: expected an attribute name string", where));
  const auto name = value.get<std::string>();
  const auto* record = catalog.find_attribute(name);
  if (!record) throw ValidationError(fmt::format("{}: unknown attribute name '{}'", where, name));
  return record->id;
}

std::vector<LabelId> resolve_list(const json& value, const LabelCatalog& catalog, std::string_view where) {
  if (!value.is_array()) throw ValidationError(fmt::format("{}: expected an array of attribute names", where));
  std::vector<LabelId> ids;
  for (const auto& v : value) ids.push_back(resolve(v, catalog, where));
  return ids;
}

void reject_unknown_keys(const json& object, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!object.is_object()) throw ValidationError(fmt::format("{}: expected an object", where));
  for (const auto& [key, _] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ValidationError(fmt::format("{}: unknown key '{}'", where, key));
    }
  }
}

const json& member(const json& object, const char* key, std::string_view where) {
  const auto it = object.find(key);
  if (it == object.end()) throw ValidationError(fmt::format("{}: missing '{}'", where, key));
  return *it;
}

json names(const std::vector<LabelId>& ids, const LabelCatalog& catalog) {
  json out = json::array();
  for (LabelId id : ids) out.push_back(catalog.at(id).attribute_name);
  return out;
}

}  // namespace

void check_acyclic(const std::vector<HierarchyEdge>& edges) {
  std::map<LabelId, std::vector<LabelId>> children;
  for (const auto& e : edges) {
    if (e.super == e.sub) throw ValidationError(fmt::format("hierarchy self-edge on {}", raw(e.super)));
    children[e.super].push_back(e.sub);
  }
  // Iterative three-colour DFS; the stack keeps the path for the message.
  enum class Mark { White, Grey, Black };
  std::map<LabelId, Mark> mark;
  for (const auto& [root, _] : children) {
    if (mark[root] != Mark::White) continue;
    std::vector<std::pair<LabelId, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::Grey;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      const auto it = children.find(node);
      if (it == children.end() || next >= it->second.size()) {
        mark[node] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const LabelId child = it->second[next++];
      if (mark[child] == Mark::Grey) {
        std::string path;
        bool on = false;
        for (const auto& [n, _i] : stack) {
          on = on || n == child;
          if (on) path += std::to_string(raw(n)) + " -> ";
        }
        throw ValidationError(fmt::format("hierarchy cycle: {}{}", path, raw(child)));
      }
      if (mark[child] == Mark::White) {
        mark[child] = Mark::Grey;
        stack.emplace_back(child, 0);
      }
    }
  }
}

void validate_plan(const TransformPlan& plan, const LabelCatalog& catalog) {
  std::unordered_set<LabelId> absorbed;
  std::unordered_set<LabelId> survivors;
  for (const auto& m : plan.merges) {
    require_known(catalog, m.survivor, "merge");
    if (m.absorbed.empty()) throw ValidationError(fmt::format("merge into {} absorbs nothing", describe(catalog, m.survivor)));
    survivors.insert(m.survivor);
    for (LabelId a : m.absorbed) {
      require_known(catalog, a, "merge");
      if (a == m.survivor) throw ValidationError(fmt::format("merge of {} with itself", describe(catalog, a)));
      if (!absorbed.insert(a).second) {
        throw ValidationError(fmt::format("{} is absorbed by more than one merge", describe(catalog, a)));
      }
    }
  }
  for (LabelId s : survivors) {
    if (absorbed.contains(s)) {
      throw ValidationError(fmt::format("{} is both a merge survivor and absorbed", describe(catalog, s)));
    }
  }

  for (const auto& e : plan.hierarchy_edges) {
    require_known(catalog, e.super, "hierarchy edge");
    require_known(catalog, e.sub, "hierarchy edge");
  }
  check_acyclic(plan.hierarchy_edges);

  for (const auto& s : plan.and_splits) {
    require_known(catalog, s.source, "and split");
    for (LabelId t : s.tokens) {
      require_known(catalog, t, "and split");
      if (t == s.source) throw ValidationError(fmt::format("and split of {} lists itself", describe(catalog, s.source)));
    }
    if (s.remove_source) {
      const auto& record = catalog.at(s.source);
      const auto split = resolve_split(s.source, Connective::And, split_connective(record.name, Connective::And),
                                       record.category, catalog);
      if (split.tokens.size() < 2 || split.split_class != SplitClass::AllResolved) {
        throw ValidationError(
            fmt::format("and split of {} removes its source but not every token resolves", describe(catalog, s.source)));
      }
    }
  }

  for (const auto& g : plan.or_groups) {
    require_known(catalog, g.source, "or group");
    for (LabelId c : g.components) {
      require_known(catalog, c, "or group");
      if (c == g.source) throw ValidationError(fmt::format("or group of {} lists itself", describe(catalog, g.source)));
    }
  }

  std::unordered_map<LabelId, std::size_t> owner;
  for (std::size_t i = 0; i < plan.exclusion_groups.size(); ++i) {
    for (LabelId l : plan.exclusion_groups[i]) {
      require_known(catalog, l, "exclusion group");
      const auto [it, fresh] = owner.emplace(l, i);
      if (!fresh && it->second != i) {
        throw ValidationError(fmt::format("{} belongs to exclusion groups {} and {}", describe(catalog, l), it->second, i));
      }
    }
  }
}

TransformPlan load_plan(std::istream& in, const LabelCatalog& catalog) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("plan", 0, e.what());
  }
  reject_unknown_keys(doc, {"merges", "hierarchy_edges", "and_splits", "or_groups", "exclusion_groups", "comment"}, "plan");

  TransformPlan plan;
  for (const auto& m : doc.value("merges", json::array())) {
    reject_unknown_keys(m, {"survivor", "absorbed"}, "merges[]");
    plan.merges.push_back({resolve(member(m, "survivor", "merges[]"), catalog, "merges[].survivor"),
                           resolve_list(member(m, "absorbed", "merges[]"), catalog, "merges[].absorbed")});
  }
  for (const auto& e : doc.value("hierarchy_edges", json::array())) {
    reject_unknown_keys(e, {"super", "sub"}, "hierarchy_edges[]");
    plan.hierarchy_edges.push_back({resolve(member(e, "super", "hierarchy_edges[]"), catalog, "hierarchy_edges[].super"),
                                    resolve(member(e, "sub", "hierarchy_edges[]"), catalog, "hierarchy_edges[].sub")});
  }
  for (const auto& s : doc.value("and_splits", json::array())) {
    reject_unknown_keys(s, {"source", "tokens", "remove_source"}, "and_splits[]");
    const auto& remove = s.contains("remove_source") ? s.at("remove_source") : json(false);
    if (!remove.is_boolean()) throw ValidationError("and_splits[].remove_source: expected a boolean");
    plan.and_splits.push_back({resolve(member(s, "source", "and_splits[]"), catalog, "and_splits[].source"),
                               resolve_list(member(s, "tokens", "and_splits[]"), catalog, "and_splits[].tokens"),
                               remove.get<bool>()});
  }
  for (const auto& g : doc.value("or_groups", json::array())) {
    reject_unknown_keys(g, {"source", "components"}, "or_groups[]");
    plan.or_groups.push_back({resolve(member(g, "source", "or_groups[]"), catalog, "or_groups[].source"),
                              resolve_list(member(g, "components", "or_groups[]"), catalog, "or_groups[].components")});
  }
  for (const auto& g : doc.value("exclusion_groups", json::array())) {
    plan.exclusion_groups.push_back(resolve_list(g, catalog, "exclusion_groups[]"));
  }
  validate_plan(plan, catalog);
  return plan;
}

void save_plan(std::ostream& out, const TransformPlan& plan, const LabelCatalog& catalog) {
  json doc = json::object();
  doc["merges"] = json::array();
  for (const auto& m : plan.merges) {
    doc["merges"].push_back({{"survivor", catalog.at(m.survivor).attribute_name}, {"absorbed", names(m.absorbed, catalog)}});
  }
  doc["hierarchy_edges"] = json::array();
  for (const auto& e : plan.hierarchy_edges) {
    doc["hierarchy_edges"].push_back(
        {{"super", catalog.at(e.super).attribute_name}, {"sub", catalog.at(e.sub).attribute_name}});
  }
  doc["and_splits"] = json::array();
  for (const auto& s : plan.and_splits) {
    doc["and_splits"].push_back({{"source", catalog.at(s.source).attribute_name},
                                 {"tokens", names(s.tokens, catalog)},
                                 {"remove_source", s.remove_source}});
  }
  doc["or_groups"] = json::array();
  for (const auto& g : plan.or_groups) {
    doc["or_groups"].push_back({{"source", catalog.at(g.source).attribute_name}, {"components", names(g.components, catalog)}});
  }
  doc["exclusion_groups"] = json::array();
  for (const auto& g : plan.exclusion_groups) doc["exclusion_groups"].push_back(names(g, catalog));
  out << doc.dump(2) << '\n';
}

}  // namespace labelbench
