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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "labelbench/cleanse.hpp"
#include "labelbench/metricmp.hpp"
#include "labelbench/metrics.hpp"
#include "labelbench/relgraph.hpp"
#include "labelbench/stats.hpp"

namespace labelbench::report {

using nlohmann::json;

/// Hex SHA-256 of a file's bytes.
std::string file_sha256(const std::filesystem::path& path);

/// Report header tracing every number back to its inputs: tool version,
/// the command, input digests and the effective configuration.
json provenance(std::string_view command, const std::map<std::string, std::filesystem::path>& inputs,
                const json& config);

json to_json(const CorpusStats& stats, const LabelCatalog& catalog);
json to_json(const ConnectiveTally& tally, const LabelCatalog& catalog);
/// Per-class rows are included unless `with_classes` is false.
json to_json(const MetricReport& report, const LabelCatalog& catalog, bool with_classes = true);
json to_json(const DeviationReport& report);
json to_json(const ComparisonReport& report);
json graph_summary(const RelationGraph& graph);

/// Writes `text` to a sibling temp file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view text);

/// Two-space indented dump with a trailing newline. Non-finite numbers are
/// written as null.
std::string dump(const json& doc);

}  // namespace labelbench::report
