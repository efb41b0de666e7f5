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

#include <functional>
#include <sstream>

#include "labelbench/textkit.hpp"
#include "support.hpp"

using namespace labelbench;
using testkit::L;

namespace {

// Exponential recursive definition, fine for strings of length <= 6.
std::size_t levenshtein_oracle(std::u32string_view a, std::u32string_view b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  const std::size_t sub = levenshtein_oracle(a.substr(1), b.substr(1)) + (a[0] == b[0] ? 0 : 1);
  const std::size_t del = levenshtein_oracle(a.substr(1), b) + 1;
  const std::size_t ins = levenshtein_oracle(a, b.substr(1)) + 1;
  return std::min({sub, del, ins});
}

std::u32string random_word(std::mt19937_64& rng, std::size_t max_len) {
  static const std::u32string alphabet = U"abcéō";
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, alphabet.size() - 1);
  std::u32string w;
  for (std::size_t n = len(rng); n > 0; --n) w.push_back(alphabet[pick(rng)]);
  return w;
}

}  // namespace

TEST_CASE("edit distance worked values") {
  CHECK(edit_distance("watercolor", "watercolor") == 0);
  CHECK(edit_distance("watercolor", "watercolour") == 1);
  CHECK(edit_distance("garnet", "garnets") == 1);
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("kitten", "sitting") == 3);
}

TEST_CASE("edit distance counts scalar values, not bytes") {
  CHECK(edit_distance("shakud\xC5\x8D", "shakudo") == 1);
  CHECK(edit_distance("shakud\x8d\xC5\x8D", "shakud\xC5\x8D") == 1);
}

TEST_CASE("edit distance matches the recursive oracle and is a metric") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 400; ++i) {
    const auto a = random_word(rng, 6), b = random_word(rng, 6), c = random_word(rng, 6);
    const auto ab = edit_distance(a, b);
    CHECK(ab == levenshtein_oracle(a, b));
    CHECK(ab == edit_distance(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(edit_distance(a, c) <= ab + edit_distance(b, c));
  }
}

TEST_CASE("similarity ratio") {
  CHECK(similarity_ratio("watercolor", "watercolour").value() == doctest::Approx(1.0 - 1.0 / 11.0).epsilon(1e-12));
  CHECK(similarity_ratio("watercolor", "watercolour").value() == doctest::Approx(0.9091).epsilon(1e-4));
  CHECK(similarity_ratio("abc", "abc").value() == 1.0);
  CHECK(similarity_ratio("a", "z").value() == 0.0);
  CHECK(similarity_ratio("", "").value() == 1.0);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_word(rng, 8), b = random_word(rng, 8);
    const double s = similarity_ratio(a, b).value();
    CHECK(s == similarity_ratio(b, a).value());
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK((s == 1.0) == (a == b));
  }
}

TEST_CASE("canonicalize lowercases, composes and collapses whitespace") {
  CHECK(canonicalize("  Black\t Chalk \n") == "black chalk");
  CHECK(canonicalize("Shakudo\xCC\x84") == "shakud\xC5\x8D");
  CHECK(canonicalize("bronze-gilt") == "bronze-gilt");
  CHECK(canonicalize("\xC3\x89MAIL") == "\xC3\xA9mail");
}

TEST_CASE("split_connective") {
  using V = std::vector<std::string>;
  CHECK(split_connective("german and italian", Connective::And) == V{"german", "italian"});
  CHECK(split_connective("british or irish", Connective::Or) == V{"british", "irish"});
  CHECK(split_connective("sand", Connective::And) == V{"sand"});
  CHECK(split_connective("orange", Connective::Or) == V{"orange"});
  CHECK(split_connective("wool, silk and linen", Connective::And) == V{"wool", "silk", "linen"});
  CHECK(split_connective("paris, france", Connective::And) == V{"paris, france"});
  CHECK(split_connective("Black AND white", Connective::And) == V{"Black", "white"});
  CHECK(split_connective("and", Connective::And).empty());
  CHECK(split_connective("", Connective::And).empty());
}

TEST_CASE("split_connective never yields empty tokens and rejoins to the input") {
  std::mt19937_64 rng(9);
  const std::vector<std::string> words = {"wool", "silk", "and", "or", "sand", "gold", ",", "  "};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1), len(1, 7);
  for (int i = 0; i < 500; ++i) {
    std::string name;
    for (std::size_t n = len(rng); n > 0; --n) name += words[pick(rng)] + " ";
    for (Connective c : {Connective::And, Connective::Or}) {
      const auto tokens = split_connective(name, c);
      for (const auto& t : tokens) CHECK_FALSE(t.empty());
      const bool no_commas = name.find(',') == std::string::npos;
      if (tokens.size() >= 2 && no_commas) {
        // Rejoin only when no empty pieces were dropped (no leading, trailing or doubled connective).
        std::string joined;
        for (std::size_t k = 0; k < tokens.size(); ++k) joined += (k ? " " + std::string(to_string(c)) + " " : "") + tokens[k];
        std::vector<std::string> words_in;
        std::istringstream ws(name);
        for (std::string w; ws >> w;) words_in.push_back(w);
        std::size_t connectives = 0;
        for (const auto& w : words_in) connectives += w == to_string(c);
        if (connectives == tokens.size() - 1) {
          std::string normalized;
          for (const auto& w : words_in) normalized += (normalized.empty() ? "" : " ") + w;
          CHECK(joined == normalized);
        }
      }
    }
  }
}

TEST_CASE("tokenize") {
  using V = std::vector<std::string>;
  CHECK(tokenize("black chalk on blue paper") == V{"black", "chalk", "on", "blue", "paper"});
  CHECK(tokenize("bronze-gilt") == V{"bronze", "gilt"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("Ink (Brown)") == V{"ink", "brown"});
}

TEST_CASE("resolve_split classifies resolution within the category") {
  const auto c = testkit::catalog_of({"culture::german and italian", "culture::german", "culture::italian",
                                      "tags::weights and measures", "culture::spanish or mexican", "country::italian"});
  const auto all = resolve_split(L(0), Connective::And, {"german", "italian"}, "culture", c);
  CHECK(all.split_class == SplitClass::AllResolved);
  CHECK(all.resolved_ids() == std::vector<LabelId>{L(1), L(2)});

  const auto none = resolve_split(L(3), Connective::And, {"weights", "measures"}, "tags", c);
  CHECK(none.split_class == SplitClass::NoneResolved);

  const auto none_or = resolve_split(L(4), Connective::Or, {"spanish", "mexican"}, "culture", c);
  CHECK(none_or.split_class == SplitClass::NoneResolved);

  const auto partial = resolve_split(L(0), Connective::And, {"German", "dutch"}, "culture", c);
  CHECK(partial.split_class == SplitClass::Partial);
  REQUIRE(partial.resolution[0].has_value());
  CHECK(*partial.resolution[0] == L(1));
  CHECK_FALSE(partial.resolution[1].has_value());
}
