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

#include <doctest.h>

#include <sstream>

#include "labelbench/csv.hpp"
#include "labelbench/stats.hpp"
#include "support.hpp"

using namespace labelbench;
using testkit::L;

namespace {

ParsedCatalog parse_text(const std::string& text, LabelFormat format = {}) {
  std::istringstream in(text);
  return parse_labels(in, format, "labels.csv");
}

ParsedAnnotations parse_ann(const std::string& text, const LabelCatalog& catalog, AnnotationFormat format = {}) {
  std::istringstream in(text);
  return parse_annotations(in, catalog, format, "train.csv");
}

}  // namespace

TEST_CASE("csv reader handles quoting, CRLF and BOM") {
  std::istringstream in("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"he said \"\"hi\"\"\"\r\n\"multi\nline\",z\n");
  csv::Reader r(in);
  std::vector<std::string> f;
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"a", "b"});
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"x, y", "he said \"hi\""});
  REQUIRE(r.next(f));
  CHECK(f == std::vector<std::string>{"multi\nline", "z"});
  CHECK(r.line() == 3);
  CHECK_FALSE(r.next(f));
}

TEST_CASE("csv escape round-trips through the reader") {
  std::mt19937_64 rng(7);
  const std::string alphabet = "ab,\"\n x";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 8);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> row(3);
    for (auto& cell : row) {
      for (std::size_t k = len(rng); k > 0; --k) cell.push_back(alphabet[pick(rng)]);
    }
    if (row.size() == 3 && row[0].empty() && row[1].empty() && row[2].empty()) row[0] = "q";
    std::ostringstream out;
    csv::write_row(out, row);
    std::istringstream in(out.str());
    csv::Reader r(in);
    std::vector<std::string> back;
    REQUIRE(r.next(back));
    CHECK(back == row);
  }
}

TEST_CASE("parse_labels splits category at the first separator") {
  const auto parsed = parse_text("attribute_id,attribute_name\n0,culture::abruzzi\n1,medium::a::b\n");
  const auto& c = parsed.catalog;
  REQUIRE(c.size() == 2);
  CHECK(c.at(L(0)).category == "culture");
  CHECK(c.at(L(0)).name == "abruzzi");
  CHECK(c.at(L(1)).category == "medium");
  CHECK(c.at(L(1)).name == "a::b");
  CHECK(parsed.warnings.empty());
}

TEST_CASE("parse_labels edge cases") {
  SUBCASE("header only gives an empty catalog") { CHECK(parse_text("attribute_id,attribute_name\n").catalog.empty()); }
  SUBCASE("missing separator is a warning, not an error") {
    const auto parsed = parse_text("attribute_id,attribute_name\n4,loose\n");
    CHECK(parsed.catalog.at(L(4)).category == kUncategorized);
    REQUIRE(parsed.warnings.size() == 1);
    CHECK(parsed.warnings[0].line == 2);
  }
  SUBCASE("single-colon separator knob") {
    const auto parsed = parse_text("attribute_id,attribute_name\n0,country:italy\n", LabelFormat{":"});
    CHECK(parsed.catalog.at(L(0)).category == "country");
    CHECK(parsed.catalog.at(L(0)).name == "italy");
  }
  SUBCASE("duplicate id reports its line") {
    try {
      parse_text("attribute_id,attribute_name\n0,a::x\n0,a::y\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.source() == "labels.csv");
    }
  }
  SUBCASE("malformed rows") {
    CHECK_THROWS_AS(parse_text("attribute_id,attribute_name\nx,a::b\n"), ParseError);
    CHECK_THROWS_AS(parse_text("attribute_id,attribute_name\n1\n"), ParseError);
    CHECK_THROWS_AS(parse_text("id,name\n"), ParseError);
  }
}

TEST_CASE("catalog lookups agree with records") {
  const auto c = testkit::catalog_of({"medium::Bronze  Gilt", "medium::bronze-gilt", "culture::french", "tags::x"});
  for (const auto& r : c.records()) {
    CHECK(c.at(r.id) == r);
    CHECK(c.find_attribute(r.attribute_name)->id == r.id);
  }
  CHECK(c.at(L(0)).canonical == "bronze gilt");
  CHECK(c.find_canonical("medium", "bronze gilt") == std::vector<LabelId>{L(0)});
  CHECK(c.find_canonical("culture", "bronze gilt").empty());
  CHECK(c.categories() == std::vector<std::string>{"culture", "medium", "tags"});
  CHECK(c.ids_in_category("medium") == std::vector<LabelId>{L(0), L(1)});
  CHECK(c.without(std::vector<LabelId>{L(1)}).size() == 3);
  CHECK_THROWS_AS(testkit::catalog_of({"a::x"}).at(L(9)), Error);
}

TEST_CASE("catalog iteration is ascending by id regardless of input order") {
  std::vector<LabelRecord> records;
  for (std::uint32_t id : {5u, 1u, 3u}) records.push_back(make_record(L(id), "t::n" + std::to_string(id), "::"));
  const LabelCatalog c(records);
  CHECK(c.ids() == std::vector<LabelId>{L(1), L(3), L(5)});
  CHECK_THROWS_AS(LabelCatalog({make_record(L(1), "t::a", "::"), make_record(L(1), "t::b", "::")}), Error);
}

TEST_CASE("parse_annotations") {
  const auto c = testkit::numbered_catalog(5);
  SUBCASE("duplicate ids in a row are deduplicated with a warning") {
    const auto parsed = parse_ann("id,attribute_ids\nx,1 2 2\n", c);
    CHECK(parsed.annotations.find("x")->labels == std::vector<LabelId>{L(1), L(2)});
    CHECK(parsed.warnings.size() == 1);
  }
  SUBCASE("duplicate ids can be made fatal") {
    AnnotationFormat strict;
    strict.duplicates = DuplicateLabelPolicy::Error;
    CHECK_THROWS_AS(parse_ann("id,attribute_ids\nx,1 2 2\n", c, strict), ParseError);
  }
  SUBCASE("empty label list") { CHECK(parse_ann("id,attribute_ids\nx,\n", c).annotations.find("x")->labels.empty()); }
  SUBCASE("unknown label names the sample") {
    try {
      parse_ann("id,attribute_ids\nx,1\nbad,9\n", c);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("bad") != std::string::npos);
    }
  }
  SUBCASE("duplicate sample id") { CHECK_THROWS_AS(parse_ann("id,attribute_ids\nx,1\nx,2\n", c), ParseError); }
}

TEST_CASE("label and annotation files round-trip byte-stably") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    auto inst = testkit::random_instance(rng, 12, 9);
    std::ostringstream l1, a1;
    write_labels(l1, inst.catalog);
    write_annotations(a1, inst.truth);
    const auto cat = parse_text(l1.str()).catalog;
    const auto ann = parse_ann(a1.str(), cat).annotations;
    CHECK(ann == inst.truth);
    std::ostringstream l2, a2;
    write_labels(l2, cat);
    write_annotations(a2, ann);
    CHECK(l1.str() == l2.str());
    CHECK(a1.str() == a2.str());
  }
}

TEST_CASE("compute_stats on a singleton") {
  const auto c = testkit::numbered_catalog(2);
  const auto stats = compute_stats(testkit::annotations({testkit::sample("s", {0})}), c);
  CHECK(stats.per_label_frequency.at(L(0)) == 1);
  CHECK(stats.per_label_frequency.at(L(1)) == 0);
  CHECK(stats.median_labels_per_sample == 1);
}

TEST_CASE("stats invariants on random corpora") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const auto inst = testkit::random_instance(rng, 15, 8);
    const auto stats = compute_stats(inst.truth, inst.catalog);

    std::size_t hist_total = 0;
    for (const auto& [k, v] : stats.labels_per_sample_histogram) hist_total += v;
    CHECK(hist_total == inst.truth.size());

    std::size_t freq_total = 0;
    for (const auto& [l, n] : stats.per_label_frequency) freq_total += n;
    CHECK(freq_total == inst.truth.positive_count());

    std::vector<std::size_t> sizes;
    for (const auto& s : inst.truth.samples()) sizes.push_back(s.labels.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(stats.median_labels_per_sample == sizes[(sizes.size() - 1) / 2]);

    const auto subset = testkit::random_subset(rng, inst.labels, 0.4);
    std::vector<LabelId> ids;
    double bound = 0;
    for (auto l : subset) {
      ids.push_back(L(l));
      bound += static_cast<double>(frequency(inst.truth, L(l))) / static_cast<double>(inst.truth.size());
    }
    CHECK(coverage(inst.truth, ids) <= std::min(1.0, bound) + 1e-12);
  }
}

TEST_CASE("lower median on an even histogram") {
  CHECK(histogram_lower_median({{2, 1}, {5, 1}}) == 2);
  CHECK(histogram_lower_median({{1, 2}, {4, 2}}) == 1);
  CHECK(histogram_lower_median({{3, 3}}) == 3);
}

TEST_CASE("cooccurrence") {
  const auto c = testkit::numbered_catalog(3);
  const auto ann = testkit::annotations(
      {testkit::sample("a", {0, 1}), testkit::sample("b", {0}), testkit::sample("c", {1, 2}), testkit::sample("d", {})});
  CHECK(cooccurrence(ann, c, L(0), L(1)) == Cooccurrence{2, 2, 1});
  CHECK(cooccurrence(ann, c, L(0), L(2)).count_both == 0);
  CHECK_THROWS_AS(cooccurrence(ann, c, L(0), L(0)), ValidationError);
  CHECK_THROWS_AS(cooccurrence(ann, c, L(0), L(7)), Error);
}
