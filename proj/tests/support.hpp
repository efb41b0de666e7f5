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

// Builders, random instance generators and brute-force oracles shared by the
// unit and acceptance tests. Oracles deliberately avoid the library's own
// helpers so that agreement is evidence of correctness.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "labelbench/catalog.hpp"
#include "labelbench/metricmp.hpp"
#include "labelbench/metrics.hpp"
#include "labelbench/relgraph.hpp"

namespace testkit {

using labelbench::AnnotationSet;
using labelbench::LabelCatalog;
using labelbench::LabelId;
using labelbench::Sample;

inline LabelId L(std::uint32_t v) { return labelbench::label_id(v); }

/// Catalog with ids 0..n-1 taken from `names` in order.
inline LabelCatalog catalog_of(const std::vector<std::string>& names) {
  std::vector<labelbench::LabelRecord> records;
  for (std::size_t i = 0; i < names.size(); ++i) {
    records.push_back(labelbench::make_record(L(static_cast<std::uint32_t>(i)), names[i], "::"));
  }
  return LabelCatalog(std::move(records));
}

/// Catalog of `n` labels named "tags::l<i>".
inline LabelCatalog numbered_catalog(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("tags::l" + std::to_string(i));
  return catalog_of(names);
}

inline Sample sample(std::string id, std::vector<std::uint32_t> labels) {
  Sample s{std::move(id), {}};
  for (auto l : labels) s.labels.push_back(L(l));
  std::sort(s.labels.begin(), s.labels.end());
  s.labels.erase(std::unique(s.labels.begin(), s.labels.end()), s.labels.end());
  return s;
}

inline AnnotationSet annotations(std::vector<Sample> samples) { return AnnotationSet(std::move(samples)); }

/// Random subset of 0..n-1 with per-label inclusion probability p.
inline std::vector<std::uint32_t> random_subset(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::uint32_t> out;
  for (std::uint32_t l = 0; l < n; ++l) {
    if (coin(rng)) out.push_back(l);
  }
  return out;
}

struct Instance {
  LabelCatalog catalog;
  AnnotationSet truth;
  AnnotationSet predictions;
  std::size_t labels = 0;
};

/// Up to `max_samples` samples over up to `max_labels` labels. Sample ids are
/// shuffled so file order differs from id order.
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_samples, std::size_t max_labels) {
  std::uniform_int_distribution<std::size_t> ns(1, max_samples), nl(1, max_labels);
  std::uniform_real_distribution<double> density(0.0, 0.6);
  Instance inst;
  inst.labels = nl(rng);
  const std::size_t n = ns(rng);
  inst.catalog = numbered_catalog(inst.labels);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));
  std::shuffle(ids.begin(), ids.end(), rng);
  std::vector<Sample> truth, pred;
  for (const auto& id : ids) {
    truth.push_back(sample(id, random_subset(rng, inst.labels, density(rng))));
    pred.push_back(sample(id, random_subset(rng, inst.labels, density(rng))));
  }
  std::shuffle(pred.begin(), pred.end(), rng);
  inst.truth = AnnotationSet(std::move(truth));
  inst.predictions = AnnotationSet(std::move(pred));
  return inst;
}

// ---------------------------------------------------------------------------
// Flat F-beta oracle: explicit per-(sample, class) confusion matrix.

struct OracleClass {
  long tp = 0, fp = 0, fn = 0, tn = 0;
};

struct FlatOracle {
  std::map<std::uint32_t, OracleClass> classes;
  double micro = 0, macro = 0, accuracy = 0;
  std::map<std::uint32_t, double> per_class;  // NaN when undefined
};

inline double oracle_f(double tp, double fp, double fn, double beta) {
  if (tp == 0 && fp == 0 && fn == 0) return std::numeric_limits<double>::quiet_NaN();
  const double b2 = beta * beta;
  return (1 + b2) * tp / ((1 + b2) * tp + b2 * fn + fp);
}

inline FlatOracle flat_oracle(const AnnotationSet& pred, const AnnotationSet& truth,
                              const std::vector<std::uint32_t>& classes, double beta) {
  FlatOracle o;
  for (auto c : classes) o.classes[c];
  for (const auto& t : truth.samples()) {
    const Sample* p = pred.find(t.id);
    for (auto c : classes) {
      const bool in_t = std::count(t.labels.begin(), t.labels.end(), L(c)) > 0;
      const bool in_p = std::count(p->labels.begin(), p->labels.end(), L(c)) > 0;
      auto& k = o.classes[c];
      if (in_t && in_p) ++k.tp;
      if (!in_t && in_p) ++k.fp;
      if (in_t && !in_p) ++k.fn;
      if (!in_t && !in_p) ++k.tn;
    }
  }
  long tp = 0, fp = 0, fn = 0, tn = 0;
  double sum = 0;
  int defined = 0;
  for (const auto& [c, k] : o.classes) {
    tp += k.tp;
    fp += k.fp;
    fn += k.fn;
    tn += k.tn;
    const double f = oracle_f(k.tp, k.fp, k.fn, beta);
    o.per_class[c] = f;
    if (!std::isnan(f)) {
      sum += f;
      ++defined;
    }
  }
  o.micro = oracle_f(tp, fp, fn, beta);
  o.macro = defined ? sum / defined : std::numeric_limits<double>::quiet_NaN();
  const long decisions = tp + fp + fn + tn;
  o.accuracy = decisions ? static_cast<double>(tp + tn) / decisions : std::numeric_limits<double>::quiet_NaN();
  return o;
}

/// Equality with NaN == NaN.
inline bool close(double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= tol;
}

// ---------------------------------------------------------------------------
// Country subgraph: china isolated; french - france - present-day france;
// united kingdom - england / scotland; "sudan and egypt" - sudan, egypt.

struct CountryGraph {
  LabelCatalog catalog;
  labelbench::RelationGraph graph;
  LabelId china, france, french, present_day_france, uk, england, scotland, sudan, egypt, sudan_and_egypt;
};

inline CountryGraph country_graph() {
  CountryGraph g;
  g.catalog = catalog_of({"country::china", "country::france", "culture::french", "country::present-day france",
                          "country::united kingdom", "country::england", "country::scotland", "country::sudan",
                          "country::egypt", "country::sudan and egypt"});
  g.china = L(0);
  g.france = L(1);
  g.french = L(2);
  g.present_day_france = L(3);
  g.uk = L(4);
  g.england = L(5);
  g.scotland = L(6);
  g.sudan = L(7);
  g.egypt = L(8);
  g.sudan_and_egypt = L(9);
  const std::vector<labelbench::AndSplit> splits = {{g.sudan_and_egypt, {g.sudan, g.egypt}, false}};
  const std::vector<labelbench::LabelEdge> curated = {
      {g.french, g.france}, {g.france, g.present_day_france}, {g.uk, g.england}, {g.uk, g.scotland}};
  g.graph = labelbench::build_graph(g.catalog, {}, splits, curated);
  return g;
}

// ---------------------------------------------------------------------------
// Graph oracle: Floyd-Warshall over an adjacency matrix.

constexpr long kFar = std::numeric_limits<long>::max() / 4;

inline std::vector<std::vector<long>> floyd(std::size_t n, const std::vector<labelbench::LabelEdge>& edges) {
  std::vector<std::vector<long>> d(n, std::vector<long>(n, kFar));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& [a, b] : edges) {
    d[labelbench::raw(a)][labelbench::raw(b)] = 1;
    d[labelbench::raw(b)][labelbench::raw(a)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline std::vector<labelbench::LabelEdge> random_edges(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<labelbench::LabelEdge> edges;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (coin(rng)) edges.emplace_back(L(a), L(b));
  return edges;
}

struct GraphCounts {
  double tp = 0, fp = 0, fn = 0;
};

/// Graph TP/FP/FN straight from the sum/max formulas, all classes in scope.
inline GraphCounts graph_oracle(const AnnotationSet& pred, const AnnotationSet& truth,
                                const std::vector<std::vector<long>>& d, bool complement) {
  const auto credit = [&](LabelId a, LabelId b) {
    const long h = d[labelbench::raw(a)][labelbench::raw(b)];
    return h >= kFar ? 0.0 : 1.0 / static_cast<double>(h + 1);
  };
  GraphCounts g;
  for (const auto& t : truth.samples()) {
    const Sample* p = pred.find(t.id);
    for (LabelId T : t.labels) {
      double best = 0;
      for (LabelId P : p->labels) best = std::max(best, credit(T, P));
      g.tp += best;
      g.fn += 1 - best;
    }
    for (LabelId P : p->labels) {
      double best = 0;
      for (LabelId T : t.labels) best = std::max(best, credit(T, P));
      g.fp += complement ? 1 - best : best;
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// DoC/DoD oracle over ordered pairs (both orientations), epsilon ties.

struct PairCounts {
  std::size_t r = 0, s = 0, p = 0, q = 0;
};

inline PairCounts pair_oracle(const std::vector<double>& f, const std::vector<double>& g, double eps) {
  PairCounts c;
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (a == b) continue;
      const double df = f[a] - f[b], dg = g[a] - g[b];
      const bool ft = std::abs(df) <= eps, gt = std::abs(dg) <= eps;
      // Count each unordered pair once, from the orientation where it is
      // increasing in f, or in g when f ties.
      if (!ft && df > 0) {
        if (!gt && dg > 0) ++c.r;
        if (!gt && dg < 0) ++c.s;
        if (gt) ++c.p;
      }
      if (ft && !gt && dg > 0) ++c.q;
    }
  }
  return c;
}

inline labelbench::ModelFamily family_of(const std::vector<double>& f, const std::vector<double>& g) {
  std::vector<labelbench::ModelScore> entries;
  for (std::size_t i = 0; i < f.size(); ++i) entries.push_back({"m" + std::to_string(i), f[i], g[i]});
  return labelbench::ModelFamily(std::move(entries));
}

}  // namespace testkit
