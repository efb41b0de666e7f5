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

#include "labelbench/metricmp.hpp"
#include "support.hpp"

using namespace labelbench;

TEST_CASE("three-model example") {
  const auto r = compare(testkit::family_of({0.5, 0.6, 0.7}, {0.5, 0.7, 0.6}), 0.0);
  CHECK(r.r_count == 2);
  CHECK(r.s_count == 1);
  CHECK(r.doc == 2.0 / 3.0);
  CHECK(r.pair_total == 3);
}

TEST_CASE("self-comparison") {
  const std::vector<double> f = {0.1, 0.4, 0.2, 0.9};
  const auto r = compare(testkit::family_of(f, f));
  CHECK(r.doc == 1.0);
  CHECK(std::isnan(r.dod));
  CHECK(interpret(r) == Verdict::Inconclusive);
}

TEST_CASE("dod conventions") {
  // f separates, g ties: P only.
  const auto inf = compare(testkit::family_of({0.1, 0.2}, {0.5, 0.5}));
  CHECK(inf.p_count == 1);
  CHECK(std::isinf(inf.dod));
  CHECK(std::isnan(inf.doc));
  const auto tied = compare(testkit::family_of({0.3, 0.3}, {0.5, 0.5}));
  CHECK(tied.skipped == 1);
  CHECK(std::isnan(tied.dod));
  CHECK_THROWS_AS(compare(testkit::family_of({0.1, 0.2}, {0.1, 0.2}), -1.0), ValidationError);
}

TEST_CASE("interpretation rule") {
  ComparisonReport r;
  r.doc = 0.92;
  r.dod = 1.77;
  CHECK(interpret(r) == Verdict::FBetter);
  r.dod = 1.0 / 1.77;
  CHECK(interpret(r) == Verdict::GBetter);
  r.doc = 0.5;
  r.dod = 1.0;
  CHECK(interpret(r) == Verdict::Inconclusive);
  r.doc = 0.4;
  r.dod = 3.0;
  CHECK(interpret(r) == Verdict::Inconclusive);
}

TEST_CASE("counts match the pair-enumeration oracle") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::size_t> size(2, 100);
  std::uniform_int_distribution<int> level(0, 20);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = size(rng);
    std::vector<double> f(n), g(n);
    // Coarse grids produce plenty of ties.
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = level(rng) / 20.0;
      g[i] = level(rng) / 20.0;
    }
    for (double eps : {0.0, 1e-4, 0.051}) {
      const auto r = compare(testkit::family_of(f, g), eps);
      const auto o = testkit::pair_oracle(f, g, eps);
      CHECK(r.r_count == o.r);
      CHECK(r.s_count == o.s);
      CHECK(r.p_count == o.p);
      CHECK(r.q_count == o.q);
      CHECK(r.pair_total == n * (n - 1) / 2);
      CHECK(r.r_count + r.s_count + r.p_count + r.q_count + r.skipped == r.pair_total);
    }
  }
}

TEST_CASE("reciprocity") {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<std::size_t> size(2, 20);
  std::uniform_int_distribution<int> level(0, 10);
  for (int round = 0; round < 200; ++round) {
    const std::size_t n = size(rng);
    std::vector<double> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = level(rng) / 10.0;
      g[i] = level(rng) / 10.0;
    }
    const auto fam = testkit::family_of(f, g);
    const auto fg = compare(fam);
    const auto gf = compare(fam.swapped());
    CHECK(testkit::close(fg.doc, gf.doc, 1e-9));
    if (std::isfinite(fg.dod) && std::isfinite(gf.dod) && fg.dod > 0 && gf.dod > 0) {
      CHECK(fg.dod * gf.dod == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("including ties in S breaks DoC symmetry") {
  const auto fam = testkit::family_of({0.1, 0.2, 0.3}, {0.5, 0.5, 0.6});
  const auto fg = compare(fam, 1e-4, InconsistencyRule::IncludeTies);
  const auto gf = compare(fam.swapped(), 1e-4, InconsistencyRule::IncludeTies);
  CHECK(fg.doc != gf.doc);
}

TEST_CASE("shrinking epsilon never moves a pair directly between R and S") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int round = 0; round < 200; ++round) {
    const double f0 = u(rng), f1 = u(rng), g0 = u(rng), g1 = u(rng);
    const auto fam = testkit::family_of({f0, f1}, {g0, g1});
    const auto big = compare(fam, 0.2), small = compare(fam, 0.01);
    CHECK_FALSE((big.r_count == 1 && small.s_count == 1));
    CHECK_FALSE((big.s_count == 1 && small.r_count == 1));
  }
}

TEST_CASE("family files") {
  const auto fam = testkit::family_of({0.25, 1.0 / 3.0}, {0.5, 0.125});
  std::ostringstream out;
  write_family(out, fam);
  std::istringstream in(out.str());
  const auto back = parse_family(in);
  REQUIRE(back.size() == 2);
  CHECK(back.entries()[1].f == 1.0 / 3.0);

  const auto fails = [](const std::string& text) {
    std::istringstream s(text);
    CHECK_THROWS_AS(parse_family(s, "family.csv"), ParseError);
  };
  fails("model,f_score,g_score\na,0.1,0.2\n");
  fails("model,f_score,g_score\na,0.1,0.2\na,0.3,0.4\n");
  fails("model,f_score,g_score\na,0.1,x\nb,0.1,0.2\n");
  fails("model,f,g\n");
  CHECK_THROWS_AS(testkit::family_of({0.1, NAN}, {0.1, 0.2}), ValidationError);
}
