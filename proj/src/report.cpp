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

#include "labelbench/report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <memory>

#include <fmt/format.h>

namespace labelbench::report {
namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json counts_json(const ConfusionCounts& c) { return {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}}; }

}  // namespace

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read {}", path.string()));

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("SHA-256 unavailable");
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json provenance(std::string_view command, const std::map<std::string, std::filesystem::path>& inputs,
                const json& config) {
  json files = json::object();
  for (const auto& [role, path] : inputs) {
    files[role] = {{"path", path.string()}, {"sha256", file_sha256(path)}};
  }
  return {{"tool", "labelbench"}, {"version", LABELBENCH_VERSION}, {"command", command}, {"inputs", files},
          {"config", config}};
}

json to_json(const CorpusStats& stats, const LabelCatalog& catalog) {
  json categories = json::object();
  for (const auto& [k, v] : stats.per_category_counts) categories[k] = v;
  json coverage = json::object();
  for (const auto& [k, v] : stats.category_coverage) {
    coverage[k] = {{"samples", v},
                   {"fraction", stats.sample_count ? static_cast<double>(v) / static_cast<double>(stats.sample_count) : 0.0}};
  }
  json histogram = json::array();
  for (const auto& [k, v] : stats.labels_per_sample_histogram) histogram.push_back({k, v});
  json frequency = json::array();
  for (const auto& [id, n] : stats.per_label_frequency) {
    frequency.push_back({{"id", raw(id)}, {"name", catalog.at(id).attribute_name}, {"count", n}});
  }
  return {{"label_count", stats.label_count},
          {"sample_count", stats.sample_count},
          {"positive_annotations", stats.positive_annotations},
          {"per_category_counts", categories},
          {"median_labels_per_sample", stats.median_labels_per_sample},
          {"median_rule", "lower"},
          {"labels_per_sample_histogram", histogram},
          {"category_coverage", coverage},
          {"per_label_frequency", frequency}};
}

json to_json(const ConnectiveTally& tally, const LabelCatalog& catalog) {
  json items = json::array();
  for (const auto& s : tally.items) {
    json resolution = json::array();
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      resolution.push_back({{"token", s.tokens[i]},
                            {"id", s.resolution[i] ? json(raw(*s.resolution[i])) : json(nullptr)},
                            {"name", s.resolution[i] ? json(catalog.at(*s.resolution[i]).attribute_name) : json(nullptr)}});
    }
    items.push_back({{"id", raw(s.source)},
                     {"name", catalog.at(s.source).attribute_name},
                     {"class", to_string(s.split_class)},
                     {"tokens", resolution}});
  }
  return {{"connective", to_string(tally.connective)},
          {"total", tally.total},
          {"all_resolved", tally.all_resolved},
          {"none_resolved", tally.none_resolved},
          {"partial", tally.partial},
          {"word_boundary_rule", "standalone word, commas split only alongside the word"},
          {"items", items}};
}

json to_json(const MetricReport& report, const LabelCatalog& catalog, bool with_classes) {
  json doc = {{"kind", report.kind},
              {"beta", report.beta},
              {"scope", report.scope},
              {"fp_mode", report.fp_mode ? json(to_string(*report.fp_mode)) : json(nullptr)},
              {"sample_count", report.sample_count},
              {"class_count", report.per_class.size()},
              {"counts", counts_json(report.total)},
              {"micro_f", number_or_null(report.micro_f)},
              {"macro_f", number_or_null(report.macro_f)},
              {"micro_accuracy", number_or_null(report.micro_accuracy)},
              {"classes_nan", report.classes_nan},
              {"classes_zero", report.classes_zero},
              {"classes_positive", report.classes_positive}};
  if (report.kind == "or-aware") {
    doc["note"] = "TP counts component hits; FP and FN are counted as in the flat report, so a sample can add both a "
                  "TP and an FN for the same or-label";
  }
  if (with_classes) {
    json classes = json::array();
    for (const auto& c : report.per_class) {
      classes.push_back({{"id", raw(c.label)},
                         {"name", catalog.at(c.label).attribute_name},
                         {"tp", c.counts.tp},
                         {"fp", c.counts.fp},
                         {"fn", c.counts.fn},
                         {"f", number_or_null(c.f)}});
    }
    doc["per_class"] = std::move(classes);
  }
  return doc;
}

json to_json(const DeviationReport& report) {
  return {{"runs", report.runs},
          {"overall_deviation", number_or_null(report.overall_deviation)},
          {"per_class_deviation", number_or_null(report.per_class_deviation)},
          {"pooled_scores", report.pooled_scores},
          {"classes_averaged", report.classes_averaged},
          {"estimator", "population"}};
}

json to_json(const ComparisonReport& report) {
  json dod;
  std::string status;
  if (std::isnan(report.dod)) {
    dod = nullptr;
    status = "undefined";
  } else if (std::isinf(report.dod)) {
    dod = "inf";
    status = "infinite";
  } else {
    dod = report.dod;
    status = "finite";
  }
  return {{"r_count", report.r_count},
          {"s_count", report.s_count},
          {"p_count", report.p_count},
          {"q_count", report.q_count},
          {"skipped_pairs", report.skipped},
          {"pair_total", report.pair_total},
          {"epsilon", report.epsilon},
          {"inconsistency_rule", to_string(report.rule)},
          {"doc", number_or_null(report.doc)},
          {"dod", dod},
          {"dod_status", status},
          {"verdict", to_string(interpret(report))}};
}

json graph_summary(const RelationGraph& graph) {
  const auto sizes = graph.component_sizes();
  std::size_t isolated = 0;
  for (auto s : sizes) isolated += s == 1;
  return {{"node_count", graph.nodes().size()},
          {"edge_count", graph.edge_count()},
          {"component_count", sizes.size()},
          {"isolated_nodes", isolated},
          {"component_sizes", sizes}};
}

void write_atomic(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write {}", tmp.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(fmt::format("write to {} failed", tmp.string()));
  }
  std::filesystem::rename(tmp, path);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace labelbench::report
