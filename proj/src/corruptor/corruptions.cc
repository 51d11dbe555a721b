// Copyright 2026 The ogsum Authors.
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

#include "corruptor/corruptions.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "core/error.h"
#include "core/vocab.h"

namespace ogsum::corruptor {

namespace {

bool IsCapitalized(const std::string& w) {
  return !w.empty() && std::isupper(static_cast<unsigned char>(w[0]));
}

bool IsAcronym(const std::string& w) {
  size_t letters = 0;
  for (char c : w) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
    if (!std::isupper(static_cast<unsigned char>(c))) return false;
    ++letters;
  }
  return letters >= 2;
}

std::string Join(std::span<const std::string> words, size_t begin, size_t end) {
  return JoinWords(words.subspan(begin, end - begin));
}

// Bare auxiliary -> negative contraction, in rule-list order.
const std::vector<std::pair<std::string, std::string>>& AuxiliaryTable() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"is", "isn't"},         {"are", "aren't"},     {"was", "wasn't"},
      {"were", "weren't"},     {"will", "won't"},     {"would", "wouldn't"},
      {"can", "can't"},        {"could", "couldn't"}, {"should", "shouldn't"},
      {"must", "mustn't"},     {"has", "hasn't"},     {"have", "haven't"},
      {"had", "hadn't"},       {"does", "doesn't"},   {"do", "don't"},
      {"did", "didn't"},
  };
  return table;
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<std::string> ToggleAuxiliary(const std::string& word) {
  const std::string lw = Lower(word);
  for (const auto& [bare, neg] : AuxiliaryTable()) {
    std::string out;
    if (lw == bare) {
      out = neg;
    } else if (lw == neg) {
      out = bare;
    } else {
      continue;
    }
    if (IsCapitalized(word)) {
      out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
  }
  return std::nullopt;
}

bool HasAlnum(const std::string& w) {
  return std::any_of(w.begin(), w.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

std::vector<std::pair<size_t, size_t>> EntitySpans(
    std::span<const std::string> words) {
  std::vector<std::pair<size_t, size_t>> spans;
  size_t i = 0;
  while (i < words.size()) {
    if (!IsCapitalized(words[i])) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < words.size() && IsCapitalized(words[j])) ++j;
    if (i > 0 || IsAcronym(words[0])) spans.emplace_back(i, j);
    i = j;
  }
  return spans;
}

std::vector<std::string> HarvestEntities(std::span<const std::string> summaries) {
  std::set<std::string> pool;
  for (const auto& s : summaries) {
    const auto words = SplitWords(s);
    for (const auto& [b, e] : EntitySpans(words)) pool.insert(Join(words, b, e));
  }
  return {pool.begin(), pool.end()};
}

std::optional<std::string> EntityReplace(const std::string& summary,
                                         std::span<const std::string> pool,
                                         Rng& rng) {
  if (pool.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "entity pool is empty");
  }
  const auto words = SplitWords(summary);
  const auto spans = EntitySpans(words);
  if (spans.empty()) return std::nullopt;
  const auto [b, e] = spans[rng.Below(spans.size())];
  const std::string old = Join(words, b, e);
  std::vector<std::string> choices;
  for (const auto& p : pool) {
    if (p != old && !SplitWords(p).empty()) choices.push_back(p);
  }
  if (choices.empty()) return std::nullopt;
  const std::string& repl = rng.Pick(choices);
  std::vector<std::string> out(words.begin(), words.begin() + b);
  for (auto& w : SplitWords(repl)) out.push_back(w);
  out.insert(out.end(), words.begin() + e, words.end());
  return JoinWords(out);
}

std::optional<std::string> Negate(const std::string& summary) {
  auto words = SplitWords(summary);
  for (auto& w : words) {
    if (auto t = ToggleAuxiliary(w)) {
      w = *t;
      return JoinWords(words);
    }
  }
  return std::nullopt;
}

std::optional<std::string> TruncateIncomplete(const std::string& summary,
                                              Rng& rng) {
  const auto words = SplitWords(summary);
  const size_t n = words.size();
  if (n <= kMaxIncompleteWords) return std::nullopt;
  std::vector<std::pair<size_t, size_t>> spans;
  for (size_t b = 1; b < n; ++b) {
    for (size_t len = 1; len <= kMaxIncompleteWords && b + len <= n; ++len) {
      const bool content = std::any_of(words.begin() + b, words.begin() + b + len,
                                       [](const std::string& w) { return HasAlnum(w); });
      if (content) spans.emplace_back(b, b + len);
    }
  }
  if (spans.empty()) return std::nullopt;
  const auto [b, e] = spans[rng.Below(spans.size())];
  return Join(words, b, e);
}

std::optional<std::string> SearchReplace(size_t id, const BigramIndex& index,
                                         Rng& rng) {
  const auto candidates = index.Candidates(id, kMinSharedBigrams);
  if (candidates.empty()) return std::nullopt;
  return index.summary(rng.Pick(candidates));
}

std::optional<std::string> SwapSegments(const std::string& summary) {
  const auto words = SplitWords(summary);
  const size_t n = words.size();
  if (n < 2) return std::nullopt;
  const size_t k = n / 2;
  std::vector<std::string> out(words.begin() + k, words.end());
  out.insert(out.end(), words.begin(), words.begin() + k);
  return JoinWords(out);
}

}  // namespace ogsum::corruptor
