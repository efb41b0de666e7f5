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

#include "labelbench/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <unordered_set>

#include <fmt/format.h>

#include "labelbench/csv.hpp"
#include "parallel.hpp"

namespace labelbench {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Shared set-up for every report: class list, class index, and the evaluated
// (prediction, truth) sample pairs in ascending sample-id order.
struct EvalFrame {
  std::vector<LabelId> classes;
  std::unordered_map<LabelId, std::size_t> class_index;
  std::vector<std::pair<const Sample*, const Sample*>> samples;

  std::vector<std::size_t> in_scope(const Sample& s) const {
    std::vector<std::size_t> out;
    for (LabelId l : s.labels) {
      if (const auto it = class_index.find(l); it != class_index.end()) out.push_back(it->second);
    }
    return out;
  }
};

EvalFrame make_frame(const AnnotationSet& predictions, const AnnotationSet& truth, const LabelCatalog& catalog,
                     const EvalScope& scope) {
  if (predictions.size() != truth.size()) {
    throw ValidationError(fmt::format("prediction and truth sample counts differ ({} vs {})", predictions.size(),
                                      truth.size()));
  }
  predictions.validate(catalog);
  truth.validate(catalog);

  EvalFrame frame;
  frame.classes = scope.classes ? *scope.classes : catalog.ids();
  std::sort(frame.classes.begin(), frame.classes.end());
  frame.classes.erase(std::unique(frame.classes.begin(), frame.classes.end()), frame.classes.end());
  for (std::size_t i = 0; i < frame.classes.size(); ++i) {
    catalog.at(frame.classes[i]);
    frame.class_index.emplace(frame.classes[i], i);
  }

  std::unordered_set<LabelId> required;
  if (scope.require_truth_any) required.insert(scope.require_truth_any->begin(), scope.require_truth_any->end());

  for (std::size_t i : truth.order_by_id()) {
    const Sample& t = truth.samples()[i];
    const Sample* p = predictions.find(t.id);
    if (!p) throw ValidationError(fmt::format("sample '{}' has ground truth but no prediction row", t.id));
    if (scope.require_truth_any &&
        std::none_of(t.labels.begin(), t.labels.end(), [&](LabelId l) { return required.contains(l); })) {
      continue;
    }
    frame.samples.emplace_back(p, &t);
  }
  return frame;
}

MetricReport finalize(std::string kind, const EvalFrame& frame, std::vector<ConfusionCounts> per_class,
                      ConfusionCounts total, const EvalOptions& options) {
  MetricReport report;
  report.kind = std::move(kind);
  report.beta = options.beta;
  report.scope = options.scope.description;
  report.sample_count = frame.samples.size();
  report.total = total;
  report.micro_f = f_beta(total, options.beta);

  double sum = 0.0;
  std::size_t defined = 0;
  report.per_class.reserve(frame.classes.size());
  for (std::size_t c = 0; c < frame.classes.size(); ++c) {
    const double f = f_beta(per_class[c], options.beta);
    report.per_class.push_back({frame.classes[c], per_class[c], f});
    if (std::isnan(f)) {
      ++report.classes_nan;
    } else {
      sum += f;
      ++defined;
      (f > 0.0 ? report.classes_positive : report.classes_zero) += 1;
    }
  }
  report.macro_f = defined ? sum / static_cast<double>(defined) : kNaN;
  return report;
}

struct FlatCounts {
  std::vector<std::uint64_t> tp, fp, fn;
  explicit FlatCounts(std::size_t n) : tp(n), fp(n), fn(n) {}
};

// Exact integer counts; the per-worker partial sums commute.
FlatCounts count_flat(const EvalFrame& frame, unsigned threads) {
  const std::size_t n = frame.classes.size();
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads ? threads : 1, frame.samples.size()));
  std::vector<FlatCounts> partial(workers, FlatCounts(n));
  detail::parallel_chunks(frame.samples.size(), threads, [&](std::size_t begin, std::size_t end, unsigned w) {
    auto& acc = partial[w];
    for (std::size_t i = begin; i < end; ++i) {
      const auto pred = frame.in_scope(*frame.samples[i].first);
      const auto truth = frame.in_scope(*frame.samples[i].second);
      std::size_t a = 0, b = 0;
      while (a < pred.size() || b < truth.size()) {
        if (b == truth.size() || (a < pred.size() && pred[a] < truth[b])) {
          ++acc.fp[pred[a++]];
        } else if (a == pred.size() || truth[b] < pred[a]) {
          ++acc.fn[truth[b++]];
        } else {
          ++acc.tp[truth[b]];
          ++a;
          ++b;
        }
      }
    }
  });
  FlatCounts sum(n);
  for (const auto& p : partial) {
    for (std::size_t c = 0; c < n; ++c) {
      sum.tp[c] += p.tp[c];
      sum.fp[c] += p.fp[c];
      sum.fn[c] += p.fn[c];
    }
  }
  return sum;
}

double flat_accuracy(const FlatCounts& counts, std::size_t samples) {
  const std::uint64_t decisions = static_cast<std::uint64_t>(samples) * counts.tp.size();
  if (decisions == 0) return kNaN;
  std::uint64_t errors = 0;
  for (std::size_t c = 0; c < counts.tp.size(); ++c) errors += counts.fp[c] + counts.fn[c];
  return static_cast<double>(decisions - errors) / static_cast<double>(decisions);
}

ConfusionCounts to_counts(std::uint64_t tp, std::uint64_t fp, std::uint64_t fn) {
  return {static_cast<double>(tp), static_cast<double>(fp), static_cast<double>(fn)};
}

double population_std(std::span<const double> values) {
  if (values.empty()) return kNaN;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

}  // namespace

ScoreSet::ScoreSet(std::vector<std::string> sample_ids) : sample_ids_(std::move(sample_ids)) {
  entries_.resize(sample_ids_.size());
  for (std::size_t i = 0; i < sample_ids_.size(); ++i) {
    if (!index_.emplace(sample_ids_[i], i).second) {
      throw ValidationError(fmt::format("duplicate sample id '{}' in score set", sample_ids_[i]));
    }
  }
}

void ScoreSet::set(std::string_view sample_id, LabelId label, double score) {
  const auto it = index_.find(std::string(sample_id));
  if (it == index_.end()) throw ValidationError(fmt::format("score for unknown sample '{}'", sample_id));
  if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
    throw ValidationError(fmt::format("score {} for sample '{}' lies outside [0, 1]", score, sample_id));
  }
  auto& row = entries_[it->second];
  const auto pos = std::lower_bound(row.begin(), row.end(), label, [](const auto& e, LabelId l) { return e.first < l; });
  if (pos != row.end() && pos->first == label) {
    pos->second = score;
  } else {
    row.insert(pos, {label, score});
  }
}

std::optional<double> ScoreSet::stored(std::size_t sample, LabelId label) const {
  const auto& row = entries_.at(sample);
  const auto pos = std::lower_bound(row.begin(), row.end(), label, [](const auto& e, LabelId l) { return e.first < l; });
  if (pos != row.end() && pos->first == label) return pos->second;
  return std::nullopt;
}

double ScoreSet::score(std::size_t sample, LabelId label) const { return stored(sample, label).value_or(0.0); }

std::size_t ScoreSet::entry_count() const noexcept {
  std::size_t n = 0;
  for (const auto& row : entries_) n += row.size();
  return n;
}

ScoreSet parse_scores(std::istream& in, const LabelCatalog& catalog, const AnnotationSet& truth, std::string source) {
  std::vector<std::string> ids;
  ids.reserve(truth.size());
  for (const auto& s : truth.samples()) ids.push_back(s.id);
  ScoreSet scores(std::move(ids));
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t i = 0; i < scores.sample_count(); ++i) index.emplace(scores.sample_ids()[i], i);

  csv::Reader reader(in);
  std::vector<std::string> fields;
  if (!reader.next(fields) || fields != std::vector<std::string>{"id", "attribute_id", "score"}) {
    throw ParseError(source, 1, "expected header 'id,attribute_id,score'");
  }
  while (reader.next(fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != 3) {
      throw ParseError(source, reader.line(), fmt::format("expected 3 columns, found {}", fields.size()));
    }
    const auto it = index.find(fields[0]);
    if (it == index.end()) throw ParseError(source, reader.line(), fmt::format("unknown sample '{}'", fields[0]));
    std::uint32_t id = 0;
    const auto [p1, e1] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), id);
    if (e1 != std::errc{} || p1 != fields[1].data() + fields[1].size()) {
      throw ParseError(source, reader.line(), fmt::format("invalid attribute_id '{}'", fields[1]));
    }
    if (!catalog.contains(label_id(id))) {
      throw ParseError(source, reader.line(), fmt::format("unknown attribute id {}", id));
    }
    double value = 0.0;
    const auto [p2, e2] = std::from_chars(fields[2].data(), fields[2].data() + fields[2].size(), value);
    if (e2 != std::errc{} || p2 != fields[2].data() + fields[2].size()) {
      throw ParseError(source, reader.line(), fmt::format("invalid score '{}'", fields[2]));
    }
    if (scores.stored(it->second, label_id(id))) {
      throw ParseError(source, reader.line(), fmt::format("repeated score for ({}, {})", fields[0], id));
    }
    try {
      scores.set(fields[0], label_id(id), value);
    } catch (const ValidationError& e) {
      throw ParseError(source, reader.line(), e.what());
    }
  }
  return scores;
}

void write_scores(std::ostream& out, const ScoreSet& scores) {
  out << "id,attribute_id,score\n";
  for (std::size_t i = 0; i < scores.sample_count(); ++i) {
    for (const auto& [label, value] : scores.entries(i)) {
      out << csv::escape(scores.sample_ids()[i]) << ',' << raw(label) << ',' << fmt::format("{:.9f}", value) << '\n';
    }
  }
}

AnnotationSet threshold(const ScoreSet& scores, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError(fmt::format("threshold {} outside [0, 1]", t));
  std::vector<Sample> samples;
  samples.reserve(scores.sample_count());
  for (std::size_t i = 0; i < scores.sample_count(); ++i) {
    Sample s{scores.sample_ids()[i], {}};
    for (const auto& [label, value] : scores.entries(i)) {
      if (value >= t) s.labels.push_back(label);
    }
    samples.push_back(std::move(s));
  }
  return AnnotationSet(std::move(samples));
}

AnnotationSet enforce_exclusion(const AnnotationSet& predictions, const ScoreSet& scores,
                                std::span<const std::vector<LabelId>> groups, const ExclusionOptions& options) {
  std::unordered_map<LabelId, std::size_t> owner;
  std::vector<std::vector<LabelId>> sorted_groups;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto members = groups[g];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (LabelId l : members) {
      if (!owner.emplace(l, g).second) {
        throw ValidationError(fmt::format("attribute {} appears in more than one exclusion group", raw(l)));
      }
    }
    sorted_groups.push_back(std::move(members));
  }

  std::unordered_map<std::string_view, std::size_t> score_index;
  for (std::size_t i = 0; i < scores.sample_count(); ++i) score_index.emplace(scores.sample_ids()[i], i);

  std::vector<Sample> samples(predictions.samples().begin(), predictions.samples().end());
  for (auto& sample : samples) {
    const auto si = score_index.find(sample.id);
    const Sample* truth = options.require_truth ? options.require_truth->find(sample.id) : nullptr;
    for (const auto& members : sorted_groups) {
      if (members.empty()) continue;
      if (options.require_truth &&
          (!truth || std::none_of(members.begin(), members.end(), [&](LabelId l) { return truth->has(l); }))) {
        continue;
      }
      if (si == score_index.end()) {
        throw ValidationError(fmt::format("sample '{}' has no scores for exclusion", sample.id));
      }
      std::optional<LabelId> best;
      double best_score = -1.0;
      for (LabelId l : members) {
        const auto s = scores.stored(si->second, l);
        if (s && *s > best_score) {
          best = l;
          best_score = *s;
        }
      }
      if (!best) {
        throw ValidationError(fmt::format("sample '{}' has no score for any member of an exclusion group", sample.id));
      }
      std::erase_if(sample.labels, [&](LabelId l) { return std::binary_search(members.begin(), members.end(), l); });
      sample.labels.push_back(*best);
    }
  }
  return AnnotationSet(std::move(samples));
}

double f_beta(const ConfusionCounts& counts, double beta) {
  if (counts.tp == 0.0 && counts.fp == 0.0 && counts.fn == 0.0) return kNaN;
  const double b2 = beta * beta;
  const double weighted = (1.0 + b2) * counts.tp;
  return weighted / (weighted + b2 * counts.fn + counts.fp);
}

std::string_view to_string(FpMode mode) noexcept { return mode == FpMode::Literal ? "literal" : "complement"; }

std::optional<FpMode> parse_fp_mode(std::string_view text) noexcept {
  if (text == "literal") return FpMode::Literal;
  if (text == "complement") return FpMode::Complement;
  return std::nullopt;
}

MetricReport fbeta_report(const AnnotationSet& predictions, const AnnotationSet& truth, const LabelCatalog& catalog,
                          const EvalOptions& options) {
  const auto frame = make_frame(predictions, truth, catalog, options.scope);
  const auto counts = count_flat(frame, options.threads);

  std::vector<ConfusionCounts> per_class;
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t c = 0; c < frame.classes.size(); ++c) {
    per_class.push_back(to_counts(counts.tp[c], counts.fp[c], counts.fn[c]));
    tp += counts.tp[c];
    fp += counts.fp[c];
    fn += counts.fn[c];
  }
  auto report = finalize("flat", frame, std::move(per_class), to_counts(tp, fp, fn), options);
  report.micro_accuracy = flat_accuracy(counts, frame.samples.size());
  return report;
}

MetricReport or_aware_report(const AnnotationSet& predictions, const AnnotationSet& truth,
                             const LabelCatalog& catalog, std::span<const OrGroup> or_groups,
                             const EvalOptions& options) {
  const auto frame = make_frame(predictions, truth, catalog, options.scope);
  auto counts = count_flat(frame, options.threads);
  const double accuracy = flat_accuracy(counts, frame.samples.size());

  for (const auto& group : or_groups) {
    catalog.at(group.source);
    for (LabelId c : group.components) catalog.at(c);
    const auto it = frame.class_index.find(group.source);
    if (it == frame.class_index.end()) continue;
    std::uint64_t hits = 0;
    for (const auto& [pred, t] : frame.samples) {
      if (!t->has(group.source)) continue;
      if (pred->has(group.source) ||
          std::any_of(group.components.begin(), group.components.end(), [&](LabelId c) { return pred->has(c); })) {
        ++hits;
      }
    }
    counts.tp[it->second] = hits;
  }

  std::vector<ConfusionCounts> per_class;
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t c = 0; c < frame.classes.size(); ++c) {
    per_class.push_back(to_counts(counts.tp[c], counts.fp[c], counts.fn[c]));
    tp += counts.tp[c];
    fp += counts.fp[c];
    fn += counts.fn[c];
  }
  auto report = finalize("or-aware", frame, std::move(per_class), to_counts(tp, fp, fn), options);
  report.micro_accuracy = accuracy;
  return report;
}

MetricReport graph_fbeta_report(const AnnotationSet& predictions, const AnnotationSet& truth,
                                const LabelCatalog& catalog, const RelationGraph& graph,
                                const EvalOptions& options) {
  const auto frame = make_frame(predictions, truth, catalog, options.scope);

  struct Contribution {
    std::size_t cls;
    ConfusionCounts counts;
  };
  struct SampleResult {
    std::vector<Contribution> parts;
    ConfusionCounts total;
  };
  std::vector<SampleResult> results(frame.samples.size());

  detail::parallel_chunks(frame.samples.size(), options.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto pred = frame.in_scope(*frame.samples[i].first);
      const auto truth_set = frame.in_scope(*frame.samples[i].second);
      auto& out = results[i];
      for (std::size_t t : truth_set) {
        double best = 0.0;
        for (std::size_t p : pred) best = std::max(best, proximity(graph.distance(frame.classes[t], frame.classes[p])));
        out.parts.push_back({t, {best, 0.0, 1.0 - best}});
      }
      for (std::size_t p : pred) {
        double best = 0.0;
        for (std::size_t t : truth_set) {
          best = std::max(best, proximity(graph.distance(frame.classes[t], frame.classes[p])));
        }
        const double fp = options.fp_mode == FpMode::Literal ? best : 1.0 - best;
        out.parts.push_back({p, {0.0, fp, 0.0}});
      }
      for (const auto& part : out.parts) out.total += part.counts;
    }
  });

  std::vector<ConfusionCounts> per_class(frame.classes.size());
  ConfusionCounts total;
  for (const auto& r : results) {
    for (const auto& part : r.parts) per_class[part.cls] += part.counts;
    total += r.total;
  }
  auto report = finalize("graph", frame, std::move(per_class), total, options);
  report.fp_mode = options.fp_mode;
  report.micro_accuracy = kNaN;
  return report;
}

DeviationReport deviation_report(std::span<const MetricReport> runs) {
  if (runs.size() < 2) throw ValidationError(fmt::format("deviation needs at least 2 runs, got {}", runs.size()));
  const auto& first = runs.front().per_class;
  for (const auto& run : runs) {
    if (run.per_class.size() != first.size() ||
        !std::equal(first.begin(), first.end(), run.per_class.begin(),
                    [](const auto& a, const auto& b) { return a.label == b.label; })) {
      throw ValidationError("deviation runs cover different class sets");
    }
  }

  DeviationReport report;
  report.runs = runs.size();
  std::vector<double> pooled;
  for (const auto& run : runs) {
    for (const auto& c : run.per_class) {
      if (!std::isnan(c.f)) pooled.push_back(c.f);
    }
  }
  report.pooled_scores = pooled.size();
  report.overall_deviation = population_std(pooled);

  double sum = 0.0;
  std::vector<double> across(runs.size());
  for (std::size_t c = 0; c < first.size(); ++c) {
    bool defined = true;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      across[r] = runs[r].per_class[c].f;
      defined = defined && !std::isnan(across[r]);
    }
    if (!defined) continue;
    sum += population_std(across);
    ++report.classes_averaged;
  }
  report.per_class_deviation = report.classes_averaged ? sum / static_cast<double>(report.classes_averaged) : kNaN;
  return report;
}

std::vector<double> log_spaced_thresholds(double low, double high, std::size_t n) {
  if (!(low > 0.0 && low <= high && high <= 1.0) || n == 0) {
    throw ValidationError(fmt::format("invalid threshold grid [{}, {}] x {}", low, high, n));
  }
  if (n == 1) return {low};
  std::vector<double> grid(n);
  const double a = std::log(low);
  const double step = (std::log(high) - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) grid[i] = std::exp(a + step * static_cast<double>(i));
  grid.front() = low;
  grid.back() = high;
  return grid;
}

std::vector<SweepPoint> sweep(const ScoreSet& scores, const AnnotationSet& truth, const LabelCatalog& catalog,
                              const RelationGraph& graph, std::span<const double> thresholds,
                              const EvalOptions& options) {
  if (thresholds.empty()) throw ValidationError("sweep needs at least one threshold");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0 && thresholds[i] <= 1.0)) {
      throw ValidationError(fmt::format("threshold {} outside [0, 1]", thresholds[i]));
    }
    if (i && thresholds[i] < thresholds[i - 1]) throw ValidationError("sweep thresholds must be sorted ascending");
  }
  std::vector<SweepPoint> points;
  points.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto predictions = threshold(scores, t);
    points.push_back({t, fbeta_report(predictions, truth, catalog, options),
                      graph_fbeta_report(predictions, truth, catalog, graph, options)});
  }
  return points;
}

}  // namespace labelbench
