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

// labelbench: clean, structure and evaluate multi-label attribute spaces.
//
//   inspect -> dupes / hierarchy / connectives -> (edit plan) -> apply
//   graph -> eval / eval-graph / eval-or / eval-excl -> sweep -> compare

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "labelbench/catalog.hpp"
#include "labelbench/cleanse.hpp"
#include "labelbench/metricmp.hpp"
#include "labelbench/metrics.hpp"
#include "labelbench/plan.hpp"
#include "labelbench/relgraph.hpp"
#include "labelbench/report.hpp"
#include "labelbench/stats.hpp"

namespace fs = std::filesystem;
using namespace labelbench;
using report::json;

namespace {

struct RunConfig {
  std::string labels;
  std::string annotations;
  std::vector<std::string> scores;
  std::string predictions;
  std::string plan;
  std::string graph_edges;
  std::string family;
  std::string out = "labelbench-out";
  std::string separator = "::";
  double threshold = kDefaultThreshold;
  double beta = kDefaultBeta;
  double similarity = kDefaultDuplicateThreshold;
  std::string fp_mode = "literal";
  double epsilon = kDefaultEpsilon;
  std::string category;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  // Subcommand knobs.
  std::string which = "and";
  bool all_categories = false;
  bool emit_plan = false;
  std::string propagation = "transitive";
  std::vector<std::string> pairs;
  std::string exclusion_category;
  bool require_truth_in_group = false;
  std::size_t grid_size = 64;
  double grid_low = 0.0025;
  double grid_high = 0.5;
  std::vector<double> thresholds;
  std::string inconsistency = "discordant";

  // Everything that can change a number in a report. Thread count is left
  // out because results do not depend on it.
  json effective() const {
    return {{"separator", separator},   {"threshold", threshold},       {"beta", beta},
            {"similarity", similarity}, {"fp_mode", fp_mode},           {"epsilon", epsilon},
            {"category", category},     {"which", which},               {"all_categories", all_categories},
            {"propagation", propagation}, {"exclusion_category", exclusion_category},
            {"require_truth_in_group", require_truth_in_group},         {"grid_size", grid_size},
            {"grid_low", grid_low},     {"grid_high", grid_high},       {"thresholds", thresholds},
            {"inconsistency", inconsistency}};
  }
};

void log_stage(const std::string& message) { std::cerr << "[labelbench] " << message << '\n'; }

std::ifstream open_input(const std::string& path, const char* role) {
  if (path.empty()) throw Error(fmt::format("--{} is required for this command", role));
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {} file '{}'", role, path));
  return in;
}

void print_warnings(const std::vector<Diagnostic>& warnings, const std::string& source) {
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < warnings.size() && i < kShown; ++i) {
    std::cerr << "[labelbench] warning: " << source << ':' << warnings[i].line << ": " << warnings[i].message << '\n';
  }
  if (warnings.size() > kShown) {
    std::cerr << "[labelbench] warning: " << source << ": " << warnings.size() - kShown << " more warning(s)\n";
  }
}

class Session {
 public:
  Session(const RunConfig& config, std::string command) : config_(config), command_(std::move(command)) {}

  const LabelCatalog& catalog() {
    if (!catalog_) {
      log_stage("reading labels " + config_.labels);
      auto in = open_input(config_.labels, "labels");
      auto parsed = parse_labels(in, LabelFormat{config_.separator}, config_.labels);
      print_warnings(parsed.warnings, config_.labels);
      catalog_ = std::move(parsed.catalog);
      inputs_["labels"] = config_.labels;
    }
    return *catalog_;
  }

  const AnnotationSet& truth() {
    if (!truth_) {
      const auto& cat = catalog();
      log_stage("reading annotations " + config_.annotations);
      auto in = open_input(config_.annotations, "annotations");
      auto parsed = parse_annotations(in, cat, {}, config_.annotations);
      print_warnings(parsed.warnings, config_.annotations);
      truth_ = std::move(parsed.annotations);
      inputs_["annotations"] = config_.annotations;
    }
    return *truth_;
  }

  ScoreSet scores(std::size_t run) {
    const auto& path = config_.scores.at(run);
    log_stage("reading scores " + path);
    auto in = open_input(path, "scores");
    auto scores = parse_scores(in, catalog(), truth(), path);
    inputs_[config_.scores.size() > 1 ? fmt::format("scores[{}]", run) : "scores"] = path;
    return scores;
  }

  AnnotationSet predictions() {
    log_stage("reading predictions " + config_.predictions);
    auto in = open_input(config_.predictions, "predictions");
    auto parsed = parse_annotations(in, catalog(), {}, config_.predictions);
    print_warnings(parsed.warnings, config_.predictions);
    inputs_["predictions"] = config_.predictions;
    return std::move(parsed.annotations);
  }

  std::optional<TransformPlan> plan() {
    if (config_.plan.empty()) return std::nullopt;
    auto in = open_input(config_.plan, "plan");
    auto plan = load_plan(in, catalog());
    inputs_["plan"] = config_.plan;
    return plan;
  }

  std::vector<LabelEdge> curated_edges() {
    if (config_.graph_edges.empty()) return {};
    auto in = open_input(config_.graph_edges, "graph-edges");
    auto edges = parse_curated_edges(in, catalog(), config_.graph_edges);
    inputs_["graph_edges"] = config_.graph_edges;
    return edges;
  }

  ModelFamily family() {
    auto in = open_input(config_.family, "family");
    auto family = parse_family(in, config_.family);
    inputs_["family"] = config_.family;
    return family;
  }

  std::optional<std::string> category() const {
    return config_.category.empty() ? std::nullopt : std::optional<std::string>(config_.category);
  }

  /// Or-groups and and-splits from the plan, or derived from label names
  /// when no plan is given.
  std::pair<std::vector<OrGroup>, std::vector<AndSplit>> connective_structure() {
    if (auto p = plan()) return {p->or_groups, p->and_splits};
    const auto& cat = catalog();
    return {or_groups_from(classify_connectives(cat, Connective::Or)),
            and_splits_from(classify_connectives(cat, Connective::And), false)};
  }

  RelationGraph graph() {
    auto [or_groups, and_splits] = connective_structure();
    const auto curated = curated_edges();
    log_stage("building relation graph");
    return build_graph(catalog(), or_groups, and_splits, curated, category());
  }

  EvalOptions eval_options() const {
    EvalOptions options;
    options.beta = config_.beta;
    options.threads = config_.threads;
    options.fp_mode = *parse_fp_mode(config_.fp_mode);
    if (const auto c = category()) {
      options.scope.classes = catalog_->ids_in_category(*c);
      if (options.scope.classes->empty()) throw ValidationError(fmt::format("category '{}' has no labels", *c));
      options.scope.description = "category:" + *c;
    }
    return options;
  }

  fs::path out(const std::string& name) const { return fs::path(config_.out) / name; }

  void write_json(const std::string& name, json body) const {
    json doc = {{"provenance", report::provenance(command_, inputs_, config_.effective())}};
    for (auto& [k, v] : body.items()) doc[k] = std::move(v);
    report::write_atomic(out(name), report::dump(doc));
    log_stage("wrote " + out(name).string());
  }

  void write_text(const std::string& name, const std::string& text) const {
    report::write_atomic(out(name), text);
    log_stage("wrote " + out(name).string());
  }

 private:
  const RunConfig& config_;
  std::string command_;
  std::optional<LabelCatalog> catalog_;
  std::optional<AnnotationSet> truth_;
  std::map<std::string, fs::path> inputs_;
};

LabelCatalog restrict_to(const LabelCatalog& catalog, const std::optional<std::string>& category) {
  if (!category) return catalog;
  std::vector<LabelRecord> kept;
  for (const auto& r : catalog.records()) {
    if (r.category == *category) kept.push_back(r);
  }
  return LabelCatalog(std::move(kept), catalog.separator());
}

LabelId resolve_name(const LabelCatalog& catalog, const std::string& name) {
  const auto* r = catalog.find_attribute(name);
  if (!r) throw ValidationError(fmt::format("unknown attribute '{}'", name));
  return r->id;
}

int run_inspect(Session& s, const RunConfig& config) {
  const auto& catalog = s.catalog();
  const auto& truth = s.truth();
  log_stage("computing corpus statistics");
  auto body = report::to_json(compute_stats(truth, catalog), catalog);

  json cooc = json::array();
  for (const auto& pair : config.pairs) {
    const auto split = pair.find('|');
    if (split == std::string::npos) throw ValidationError(fmt::format("--pair expects 'A|B', got '{}'", pair));
    const auto a = resolve_name(catalog, pair.substr(0, split));
    const auto b = resolve_name(catalog, pair.substr(split + 1));
    const auto c = cooccurrence(truth, catalog, a, b);
    cooc.push_back({{"a", catalog.at(a).attribute_name},
                    {"b", catalog.at(b).attribute_name},
                    {"count_a", c.count_a},
                    {"count_b", c.count_b},
                    {"count_both", c.count_both},
                    {"merged", c.count_a + c.count_b - c.count_both}});
  }
  json dupes = json::array();
  for (const auto& group : catalog.duplicate_canonicals()) {
    json names = json::array();
    for (LabelId id : group) names.push_back(catalog.at(id).attribute_name);
    dupes.push_back(names);
  }
  s.write_json("stats.json", {{"stats", body}, {"cooccurrence", cooc}, {"canonical_collisions", dupes}});
  return 0;
}

int run_dupes(Session& s, const RunConfig& config) {
  const auto catalog = restrict_to(s.catalog(), s.category());
  log_stage(fmt::format("scanning {} labels for near-duplicates", catalog.size()));
  const auto pairs = find_duplicates(s.catalog(), config.similarity, !config.all_categories, config.threads);
  std::vector<DuplicateCandidate> kept;
  for (const auto& p : pairs) {
    if (catalog.contains(p.first) && catalog.contains(p.second)) kept.push_back(p);
  }
  std::ostringstream csv;
  write_duplicate_candidates(csv, kept, s.catalog());
  s.write_text("duplicates.csv", csv.str());
  s.write_json("duplicates.json", {{"candidate_count", kept.size()}, {"file", "duplicates.csv"}});
  return 0;
}

int run_hierarchy(Session& s, const RunConfig&) {
  const auto catalog = restrict_to(s.catalog(), s.category());
  const auto candidates = find_hierarchy_candidates(catalog);
  std::ostringstream csv;
  write_hierarchy_candidates(csv, candidates, catalog);
  s.write_text("hierarchy.csv", csv.str());
  s.write_json("hierarchy.json", {{"candidate_count", candidates.size()}, {"file", "hierarchy.csv"}});
  return 0;
}

int run_connectives(Session& s, const RunConfig& config) {
  const auto& catalog = s.catalog();
  std::vector<Connective> which;
  if (config.which == "both") {
    which = {Connective::And, Connective::Or};
  } else {
    which = {*parse_connective(config.which)};
  }
  json tallies = json::object();
  TransformPlan fragment;
  for (Connective c : which) {
    const auto tally = classify_connectives(catalog, c);
    tallies[std::string(to_string(c))] = report::to_json(tally, catalog);
    std::ostringstream csv;
    write_split_candidates(csv, tally.items, catalog);
    s.write_text(fmt::format("splits_{}.csv", to_string(c)), csv.str());
    if (c == Connective::And) fragment.and_splits = and_splits_from(tally, true);
    if (c == Connective::Or) fragment.or_groups = or_groups_from(tally);
  }
  s.write_json("connectives.json", {{"connectives", tallies}});
  if (config.emit_plan) {
    std::ostringstream plan;
    save_plan(plan, fragment, catalog);
    s.write_text("connectives_plan.json", plan.str());
  }
  return 0;
}

int run_apply(Session& s, const RunConfig& config) {
  const auto& catalog = s.catalog();
  const auto& truth = s.truth();
  const auto plan = s.plan();
  if (!plan) throw Error("--plan is required for apply");
  const auto mode = config.propagation == "direct" ? PropagationMode::Direct : PropagationMode::Transitive;
  log_stage("applying plan");
  const auto [annotations, cleaned] = apply_plan(truth, catalog, *plan, mode);

  std::ostringstream labels_csv, annotations_csv;
  write_labels(labels_csv, cleaned);
  write_annotations(annotations_csv, annotations);
  s.write_text("labels.csv", labels_csv.str());
  s.write_text("annotations.csv", annotations_csv.str());
  s.write_json("apply.json", {{"labels_before", catalog.size()},
                              {"labels_after", cleaned.size()},
                              {"samples", annotations.size()},
                              {"positives_before", truth.positive_count()},
                              {"positives_after", annotations.positive_count()},
                              {"merges", plan->merges.size()},
                              {"and_splits", plan->and_splits.size()},
                              {"hierarchy_edges", plan->hierarchy_edges.size()}});
  return 0;
}

int run_graph(Session& s, const RunConfig&) {
  const auto graph = s.graph();
  std::ostringstream edges;
  write_edge_list(edges, graph, s.catalog());
  s.write_text("graph_edges.csv", edges.str());
  s.write_json("graph.json", {{"graph", report::graph_summary(graph)}, {"file", "graph_edges.csv"}});
  return 0;
}

std::vector<AnnotationSet> load_prediction_runs(Session& s, const RunConfig& config) {
  std::vector<AnnotationSet> runs;
  if (!config.predictions.empty()) runs.push_back(s.predictions());
  for (std::size_t i = 0; i < config.scores.size(); ++i) runs.push_back(threshold(s.scores(i), config.threshold));
  if (runs.empty()) throw Error("one of --scores or --predictions is required");
  return runs;
}

int run_eval(Session& s, const RunConfig& config) {
  s.truth();
  const auto runs = load_prediction_runs(s, config);
  const auto options = s.eval_options();
  std::vector<MetricReport> reports;
  for (const auto& predictions : runs) reports.push_back(fbeta_report(predictions, s.truth(), s.catalog(), options));

  json body = {{"report", report::to_json(reports.front(), s.catalog())}};
  if (reports.size() > 1) {
    json all = json::array();
    for (const auto& r : reports) all.push_back(report::to_json(r, s.catalog(), false));
    body["runs"] = all;
    body["deviation"] = report::to_json(deviation_report(reports));
  }
  s.write_json("eval.json", body);
  return 0;
}

int run_eval_graph(Session& s, const RunConfig& config) {
  s.truth();
  const auto graph = s.graph();
  const auto runs = load_prediction_runs(s, config);
  const auto options = s.eval_options();
  const auto flat = fbeta_report(runs.front(), s.truth(), s.catalog(), options);
  const auto graph_report = graph_fbeta_report(runs.front(), s.truth(), s.catalog(), graph, options);
  s.write_json("eval_graph.json", {{"graph", report::graph_summary(graph)},
                                   {"report", report::to_json(graph_report, s.catalog())},
                                   {"flat", report::to_json(flat, s.catalog(), false)}});
  return 0;
}

int run_eval_or(Session& s, const RunConfig& config) {
  s.truth();
  const auto groups = s.connective_structure().first;
  const auto runs = load_prediction_runs(s, config);
  auto options = s.eval_options();
  const auto flat = fbeta_report(runs.front(), s.truth(), s.catalog(), options);
  const auto aware = or_aware_report(runs.front(), s.truth(), s.catalog(), groups, options);

  std::vector<LabelId> or_labels;
  for (const auto& g : groups) or_labels.push_back(g.source);
  options.scope.classes = or_labels;
  options.scope.description = "or-labels";
  const auto flat_or = fbeta_report(runs.front(), s.truth(), s.catalog(), options);
  const auto aware_or = or_aware_report(runs.front(), s.truth(), s.catalog(), groups, options);

  s.write_json("eval_or.json", {{"or_groups", groups.size()},
                                {"report", report::to_json(aware, s.catalog())},
                                {"flat", report::to_json(flat, s.catalog(), false)},
                                {"or_labels_only", {{"flat", report::to_json(flat_or, s.catalog(), false)},
                                                    {"or_aware", report::to_json(aware_or, s.catalog(), false)}}}});
  return 0;
}

int run_eval_excl(Session& s, const RunConfig& config) {
  const auto& catalog = s.catalog();
  const auto& truth = s.truth();
  if (config.scores.empty()) throw Error("--scores is required for eval-excl");
  std::vector<std::vector<LabelId>> groups;
  if (auto p = s.plan()) groups = p->exclusion_groups;
  if (!config.exclusion_category.empty()) groups.push_back(catalog.ids_in_category(config.exclusion_category));
  if (groups.empty() || std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.empty(); })) {
    throw Error("no exclusion groups: give --plan with exclusion_groups or --exclusion-category");
  }

  const auto scores = s.scores(0);
  const auto thresholded = threshold(scores, config.threshold);
  ExclusionOptions exclusion;
  if (config.require_truth_in_group) exclusion.require_truth = &truth;
  const auto top1 = enforce_exclusion(thresholded, scores, groups, exclusion);

  auto options = s.eval_options();
  std::vector<LabelId> members;
  for (const auto& g : groups) members.insert(members.end(), g.begin(), g.end());
  if (!options.scope.classes) {
    options.scope.classes = members;
    options.scope.description = "exclusion-groups";
  }
  if (config.require_truth_in_group) {
    options.scope.require_truth_any = members;
    options.scope.description += "+truth-in-group";
  }
  s.write_json("eval_excl.json", {{"thresholded", report::to_json(fbeta_report(thresholded, truth, catalog, options), catalog)},
                                  {"top1", report::to_json(fbeta_report(top1, truth, catalog, options), catalog)}});
  return 0;
}

int run_sweep(Session& s, const RunConfig& config) {
  s.truth();
  if (config.scores.empty()) throw Error("--scores is required for sweep");
  const auto graph = s.graph();
  const auto scores = s.scores(0);
  auto grid = config.thresholds;
  if (grid.empty()) grid = log_spaced_thresholds(config.grid_low, config.grid_high, config.grid_size);
  log_stage(fmt::format("sweeping {} thresholds", grid.size()));
  const auto points = sweep(scores, s.truth(), s.catalog(), graph, grid, s.eval_options());

  json rows = json::array();
  for (const auto& p : points) {
    rows.push_back({{"threshold", p.threshold},
                    {"flat", report::to_json(p.flat, s.catalog(), false)},
                    {"graph", report::to_json(p.graph, s.catalog(), false)}});
  }
  s.write_json("sweep.json", {{"points", rows}, {"family_file", "family.csv"}});
  if (points.size() >= 2) {
    std::ostringstream family;
    write_family(family, family_from_sweep(points));
    s.write_text("family.csv", family.str());
  }
  return 0;
}

int run_compare(Session& s, const RunConfig& config) {
  const auto family = s.family();
  const auto rule =
      config.inconsistency == "include_ties" ? InconsistencyRule::IncludeTies : InconsistencyRule::Discordant;
  const auto forward = compare(family, config.epsilon, rule);
  const auto backward = compare(family.swapped(), config.epsilon, rule);
  s.write_json("compare.json", {{"models", family.size()},
                                {"f_vs_g", report::to_json(forward)},
                                {"g_vs_f", report::to_json(backward)}});
  return 0;
}

void emit_error(const std::string& kind, const std::string& message, const std::string& file = {},
                std::size_t line = 0) {
  json err = {{"kind", kind}, {"message", message}};
  if (!file.empty()) err["file"] = file;
  if (line) err["line"] = line;
  std::cerr << json{{"error", err}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig config;
  CLI::App app{"labelbench: clean, structure and evaluate multi-label attribute spaces"};
  app.set_version_flag("--version", std::string(LABELBENCH_VERSION));
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--labels", config.labels, "attribute_id,attribute_name file");
  app.add_option("--annotations", config.annotations, "id,attribute_ids ground-truth file");
  app.add_option("--scores", config.scores, "id,attribute_id,score file (repeat for several runs)");
  app.add_option("--predictions", config.predictions, "binary predictions in id,attribute_ids format");
  app.add_option("--plan", config.plan, "transformation plan JSON");
  app.add_option("--graph-edges", config.graph_edges, "curated edge file (two attribute names per row)");
  app.add_option("--family", config.family, "model,f_score,g_score file");
  app.add_option("--out", config.out, "output directory")->capture_default_str();
  app.add_option("--separator", config.separator, "category/name separator in attribute names")->capture_default_str();
  app.add_option("--threshold", config.threshold, "decision threshold (score >= t)")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--beta", config.beta, "F-beta weight")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--similarity", config.similarity, "duplicate similarity threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->check([](const std::string& v) { return std::stod(v) > 0.0 ? std::string{} : "must be > 0"; })
      ->capture_default_str();
  app.add_option("--fp-mode", config.fp_mode, "graph FP formula")
      ->check(CLI::IsMember({"literal", "complement"}))
      ->capture_default_str();
  app.add_option("--epsilon", config.epsilon, "tie tolerance for metric comparison")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--category", config.category, "restrict labels / classes to one category");
  app.add_option("--threads", config.threads, "worker threads")->check(CLI::Range(1u, 1024u));

  auto* inspect = app.add_subcommand("inspect", "corpus statistics and co-occurrence counts");
  inspect->add_option("--pair", config.pairs, "co-occurrence of 'A|B' (attribute names), repeatable");

  auto* dupes = app.add_subcommand("dupes", "near-duplicate label candidates");
  dupes->add_flag("--all-categories", config.all_categories, "compare across categories too");

  app.add_subcommand("hierarchy", "super/sub category candidates from token containment");

  auto* connectives = app.add_subcommand("connectives", "and/or decomposition tallies");
  connectives->add_option("--which", config.which, "and, or or both")
      ->check(CLI::IsMember({"and", "or", "both"}))
      ->capture_default_str();
  connectives->add_flag("--emit-plan", config.emit_plan, "also write a plan fragment with the resolved splits");

  auto* apply = app.add_subcommand("apply", "apply a verified plan and write cleaned files");
  apply->add_option("--propagation", config.propagation, "supercategory propagation")
      ->check(CLI::IsMember({"transitive", "direct"}))
      ->capture_default_str();

  app.add_subcommand("graph", "build and export the relation graph");
  app.add_subcommand("eval", "flat F-beta report (several --scores add a deviation report)");
  app.add_subcommand("eval-graph", "graph-distance F-beta report");
  app.add_subcommand("eval-or", "or-aware F-beta report");

  auto* excl = app.add_subcommand("eval-excl", "top-1 mutual exclusion within groups");
  excl->add_option("--exclusion-category", config.exclusion_category, "treat one category as an exclusion group");
  excl->add_flag("--require-truth-in-group", config.require_truth_in_group,
                 "only samples whose truth holds a group label");

  auto* sweep_cmd = app.add_subcommand("sweep", "flat and graph reports over a threshold grid");
  sweep_cmd->add_option("--grid-size", config.grid_size, "log-spaced grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--grid-low", config.grid_low)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sweep_cmd->add_option("--grid-high", config.grid_high)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  sweep_cmd->add_option("--thresholds", config.thresholds, "explicit sorted threshold list")
      ->check(CLI::Range(0.0, 1.0));

  auto* cmp = app.add_subcommand("compare", "degree of consistency / discriminancy of two measures");
  cmp->add_option("--inconsistency", config.inconsistency, "discordant or include_ties")
      ->check(CLI::IsMember({"discordant", "include_ties"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      emit_error("usage", e.what());
      return 2;
    }
    return app.exit(e);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Session session(config, command);
  try {
    static const std::map<std::string, int (*)(Session&, const RunConfig&)> handlers = {
        {"inspect", run_inspect},       {"dupes", run_dupes},           {"hierarchy", run_hierarchy},
        {"connectives", run_connectives}, {"apply", run_apply},         {"graph", run_graph},
        {"eval", run_eval},             {"eval-graph", run_eval_graph}, {"eval-or", run_eval_or},
        {"eval-excl", run_eval_excl},   {"sweep", run_sweep},           {"compare", run_compare}};
    return handlers.at(command)(session, config);
  } catch (const labelbench::ParseError& e) {
    emit_error("parse", e.what(), e.source(), e.line());
  } catch (const ValidationError& e) {
    emit_error("validation", e.what());
  } catch (const std::exception& e) {
    emit_error("error", e.what());
  }
  return 1;
}
