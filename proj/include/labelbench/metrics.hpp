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
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "labelbench/catalog.hpp"
#include "labelbench/plan.hpp"
#include "labelbench/relgraph.hpp"

namespace labelbench {

inline constexpr double kDefaultThreshold = 0.1;
inline constexpr double kDefaultBeta = 2.0;

/// Raw per-(sample, label) model outputs. Samples are registered up front;
/// absent entries read as 0.
class ScoreSet {
 public:
  ScoreSet() = default;
  explicit ScoreSet(std::vector<std::string> sample_ids);

  /// Throws ValidationError for unknown samples or scores outside [0, 1].
  void set(std::string_view sample_id, LabelId label, double score);

  std::span<const std::string> sample_ids() const noexcept { return sample_ids_; }
  std::size_t sample_count() const noexcept { return sample_ids_.size(); }
  /// Stored entries of one sample, ascending label id.
  std::span<const std::pair<LabelId, double>> entries(std::size_t sample) const { return entries_[sample]; }
  /// Absent entries are 0.
  double score(std::size_t sample, LabelId label) const;
  std::optional<double> stored(std::size_t sample, LabelId label) const;
  std::size_t entry_count() const noexcept;

 private:
  std::vector<std::string> sample_ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::pair<LabelId, double>>> entries_;
};

/// `id,attribute_id,score` rows. Samples are those of `truth` in its order;
/// rows for other samples, unknown labels, repeated (sample, label) pairs or
/// out-of-range scores are ParseErrors.
ScoreSet parse_scores(std::istream& in, const LabelCatalog& catalog, const AnnotationSet& truth,
                      std::string source = "scores");
/// Scores with 9 decimals, rows in sample then label order.
void write_scores(std::ostream& out, const ScoreSet& scores);

/// Predicts every stored entry with score >= t.
AnnotationSet threshold(const ScoreSet& scores, double t);

struct ExclusionOptions {
  /// When set, only samples whose truth holds a member of the group are
  /// forced to a single prediction; others keep their group labels as is.
  const AnnotationSet* require_truth = nullptr;
};

/// Keeps exactly the highest-scoring member of each group (ties: lowest id)
/// for every evaluated sample. Labels outside the groups pass through.
/// Throws ValidationError when groups overlap or an evaluated sample has no
/// stored score for any member of a group.
AnnotationSet enforce_exclusion(const AnnotationSet& predictions, const ScoreSet& scores,
                                std::span<const std::vector<LabelId>> groups, const ExclusionOptions& options = {});

struct ConfusionCounts {
  double tp = 0.0;
  double fp = 0.0;
  double fn = 0.0;

  ConfusionCounts& operator+=(const ConfusionCounts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// (1 + b^2) TP / ((1 + b^2) TP + b^2 FN + FP); NaN when TP = FP = FN = 0.
double f_beta(const ConfusionCounts& counts, double beta);

enum class FpMode { Literal, Complement };

std::string_view to_string(FpMode mode) noexcept;
std::optional<FpMode> parse_fp_mode(std::string_view text) noexcept;

struct EvalScope {
  /// Classes to score; all catalog labels when unset.
  std::optional<std::vector<LabelId>> classes;
  /// Only samples whose truth holds one of these labels are evaluated.
  std::optional<std::vector<LabelId>> require_truth_any;
  std::string description = "all";
};

struct EvalOptions {
  double beta = kDefaultBeta;
  EvalScope scope;
  FpMode fp_mode = FpMode::Literal;
  unsigned threads = 1;
};

struct ClassScore {
  LabelId label{};
  ConfusionCounts counts;
  /// NaN when undefined.
  double f = 0.0;
};

struct MetricReport {
  std::string kind;
  double beta = kDefaultBeta;
  std::string scope;
  std::optional<FpMode> fp_mode;
  std::size_t sample_count = 0;
  ConfusionCounts total;
  double micro_f = 0.0;
  /// Mean over defined classes; NaN when none is defined.
  double macro_f = 0.0;
  /// (TP + TN) / decisions over the scope; NaN for graph reports.
  double micro_accuracy = 0.0;
  std::vector<ClassScore> per_class;
  std::size_t classes_nan = 0;
  std::size_t classes_zero = 0;
  std::size_t classes_positive = 0;
};

/// Flat per-class, micro and macro F-beta plus micro accuracy. Throws
/// ValidationError when prediction and truth sample ids differ.
MetricReport fbeta_report(const AnnotationSet& predictions, const AnnotationSet& truth, const LabelCatalog& catalog,
                          const EvalOptions& options = {});

/// Flat metrics where a positive or-label counts as a true positive when
/// the prediction holds the or-label or any of its components. FP and FN
/// are counted exactly as in fbeta_report, so one sample may yield both a
/// TP and an FN for the same or-label.
MetricReport or_aware_report(const AnnotationSet& predictions, const AnnotationSet& truth,
                             const LabelCatalog& catalog, std::span<const OrGroup> or_groups,
                             const EvalOptions& options = {});

/// Graph-distance metrics. Per sample with true set T and predicted set P
/// (both restricted to the scope):
///   TP = sum_T max_P 1/(d+1),  FN = sum_T (1 - max_P 1/(d+1)),
///   FP = sum_P max_T 1/(d+1)        (Literal)
///   FP = sum_P (1 - max_T 1/(d+1))  (Complement)
/// with max over an empty set = 0. TP and FN are booked to the true label's
/// class, FP to the predicted label's class. Sums run in ascending sample id
/// order, so results do not depend on the thread count.
MetricReport graph_fbeta_report(const AnnotationSet& predictions, const AnnotationSet& truth,
                                const LabelCatalog& catalog, const RelationGraph& graph,
                                const EvalOptions& options = {});

struct DeviationReport {
  double overall_deviation = 0.0;
  double per_class_deviation = 0.0;
  std::size_t runs = 0;
  std::size_t pooled_scores = 0;
  std::size_t classes_averaged = 0;
};

/// Population standard deviations. overall: all defined (run, class) scores
/// pooled. per_class: mean over classes defined in every run of the std
/// across runs. Throws ValidationError for < 2 runs or differing classes.
DeviationReport deviation_report(std::span<const MetricReport> runs);

/// n thresholds spaced evenly in log space over [low, high].
std::vector<double> log_spaced_thresholds(double low = 0.0025, double high = 0.5, std::size_t n = 64);

struct SweepPoint {
  double threshold = 0.0;
  MetricReport flat;
  MetricReport graph;
};

/// One flat and one graph evaluation per threshold, in the given order.
/// Throws ValidationError for an empty, unsorted or out-of-range list.
std::vector<SweepPoint> sweep(const ScoreSet& scores, const AnnotationSet& truth, const LabelCatalog& catalog,
                              const RelationGraph& graph, std::span<const double> thresholds,
                              const EvalOptions& options = {});

}  // namespace labelbench
