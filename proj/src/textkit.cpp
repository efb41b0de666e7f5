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

#include "labelbench/textkit.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cctype>
#include <numeric>

#include "labelbench/catalog.hpp"

namespace labelbench {
namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool iequals_ascii(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) { return ascii_lower(x) == ascii_lower(y); });
}

std::vector<std::string_view> split_ascii_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_ascii_space(text[i])) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

std::string join(const std::vector<std::string_view>& words, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out.push_back(' ');
    out.append(words[i]);
  }
  return out;
}

std::string collapse_ascii_ws(std::string_view text) {
  const auto words = split_ascii_words(text);
  return join(words, 0, words.size());
}

}  // namespace

std::u32string to_scalars(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
  const auto length = static_cast<int32_t>(utf8.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back(c < 0 ? kReplacement : static_cast<char32_t>(c));
  }
  return out;
}

std::string canonicalize(std::string_view name) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");

  icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(name.data(), static_cast<int32_t>(name.size())));
  text.toLower(icu::Locale::getRoot());
  icu::UnicodeString normalized = nfc->normalize(text, status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < normalized.length();) {
    const UChar32 c = normalized.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar>(' '));
    pending_space = false;
    collapsed.append(c);
  }
  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  if (b.empty()) return a.size();

  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({above + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(to_scalars(a), to_scalars(b));
}

SimilarityScore similarity_ratio(std::u32string_view a, std::u32string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return SimilarityScore{1.0};
  const std::size_t distance = edit_distance(a, b);
  return SimilarityScore{1.0 - static_cast<double>(distance) / static_cast<double>(longest)};
}

SimilarityScore similarity_ratio(std::string_view a, std::string_view b) {
  return similarity_ratio(to_scalars(a), to_scalars(b));
}

std::string_view to_string(Connective connective) noexcept {
  return connective == Connective::And ? "and" : "or";
}

std::optional<Connective> parse_connective(std::string_view text) noexcept {
  if (iequals_ascii(text, "and")) return Connective::And;
  if (iequals_ascii(text, "or")) return Connective::Or;
  return std::nullopt;
}

std::vector<std::string> split_connective(std::string_view name, Connective connective) {
  const std::string_view word = to_string(connective);
  const auto words = split_ascii_words(name);

  std::vector<std::string> pieces;
  std::size_t begin = 0;
  bool split = false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (iequals_ascii(words[i], word)) {
      pieces.push_back(join(words, begin, i));
      begin = i + 1;
      split = true;
    }
  }
  pieces.push_back(join(words, begin, words.size()));

  std::vector<std::string> tokens;
  if (!split) {
    if (!pieces.front().empty()) tokens.push_back(std::move(pieces.front()));
    return tokens;
  }
  for (const auto& piece : pieces) {
    std::size_t start = 0;
    while (start <= piece.size()) {
      std::size_t comma = piece.find(',', start);
      if (comma == std::string::npos) comma = piece.size();
      std::string token = collapse_ascii_ws(std::string_view(piece).substr(start, comma - start));
      if (!token.empty()) tokens.push_back(std::move(token));
      start = comma + 1;
    }
  }
  return tokens;
}

std::vector<std::string> tokenize(std::string_view name) {
  const std::string canonical = canonicalize(name);
  std::vector<std::string> tokens;
  std::string current;
  for (char c : canonical) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 0x80 && (is_ascii_space(c) || std::ispunct(u))) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string_view to_string(SplitClass split_class) noexcept {
  switch (split_class) {
    case SplitClass::AllResolved:
      return "all_resolved";
    case SplitClass::NoneResolved:
      return "none_resolved";
    case SplitClass::Partial:
      return "partial";
  }
  return "unknown";
}

std::vector<LabelId> ConnectiveSplit::resolved_ids() const {
  std::vector<LabelId> ids;
  for (const auto& r : resolution) {
    if (r) ids.push_back(*r);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

ConnectiveSplit resolve_split(LabelId source, Connective connective, std::vector<std::string> tokens,
                              std::string_view category, const LabelCatalog& catalog) {
  ConnectiveSplit split;
  split.source = source;
  split.connective = connective;
  split.tokens = std::move(tokens);
  std::size_t resolved = 0;
  for (const auto& token : split.tokens) {
    const auto matches = catalog.find_canonical(category, canonicalize(token));
    if (matches.empty()) {
      split.resolution.emplace_back();
    } else {
      split.resolution.emplace_back(matches.front());
      ++resolved;
    }
  }
  if (resolved == split.tokens.size() && resolved > 0) {
    split.split_class = SplitClass::AllResolved;
  } else if (resolved == 0) {
    split.split_class = SplitClass::NoneResolved;
  } else {
    split.split_class = SplitClass::Partial;
  }
  return split;
}

}  // namespace labelbench
