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

// Independent checks of the per-kind corruption predicates, written against
// the ground-truth summary without calling into the corruptor.

#ifndef OGSUM_TESTS_CORRUPTION_ORACLE_H_
#define OGSUM_TESTS_CORRUPTION_ORACLE_H_

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "corruptor/dataset.h"

namespace ogsum::testing {

inline std::vector<std::string> Words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> w;
  std::string t;
  while (is >> t) w.push_back(t);
  return w;
}

inline bool StartsUpper(const std::string& w) {
  return !w.empty() && std::isupper(static_cast<unsigned char>(w[0]));
}

inline std::string LowerCopy(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline size_t SharedBigrams(const std::string& a, const std::string& b) {
  auto grams = [](const std::string& s) {
    const auto w = Words(s);
    std::set<std::pair<std::string, std::string>> g;
    for (size_t i = 0; i + 1 < w.size(); ++i) g.insert({w[i], w[i + 1]});
    return g;
  };
  const auto ga = grams(a), gb = grams(b);
  size_t n = 0;
  for (const auto& g : ga) n += gb.count(g);
  return n;
}

// Bare auxiliaries and their negated forms.
inline const std::map<std::string, std::string>& NegationPairs() {
  static const std::map<std::string, std::string> pairs = [] {
    std::map<std::string, std::string> m;
    for (const char* w : {"is", "are", "was", "were", "would", "could", "should",
                          "must", "has", "have", "had", "does", "do", "did"}) {
      m[w] = std::string(w) + "n't";
    }
    m["will"] = "won't";
    m["can"] = "can't";
    return m;
  }();
  return pairs;
}

inline bool IsAuxiliaryForm(const std::string& w) {
  const std::string lw = LowerCopy(w);
  for (const auto& [bare, neg] : NegationPairs()) {
    if (lw == bare || lw == neg) return true;
  }
  return false;
}

inline bool IsTogglePair(const std::string& a, const std::string& b) {
  const std::string la = LowerCopy(a), lb = LowerCopy(b);
  for (const auto& [bare, neg] : NegationPairs()) {
    if ((la == bare && lb == neg) || (la == neg && lb == bare)) return true;
  }
  return false;
}

// Empty when `out` is a valid corruption of kind `kind` for ground truth
// `truth`; otherwise the reason it is not. `train_summaries` backs the
// search-and-replace membership check.
inline std::string CheckCorruption(corruptor::CorruptionKind kind,
                                   const std::string& truth,
                                   const std::string& out,
                                   const std::set<std::string>& train_summaries) {
  using corruptor::CorruptionKind;
  const auto t = Words(truth);
  const auto o = Words(out);
  if (o.empty()) return "empty summary";
  if (o == t) return "identical to ground truth";
  switch (kind) {
    case CorruptionKind::kIncomplete: {
      if (o.size() > 5) return "more than five words";
      for (size_t b = 1; b + o.size() <= t.size(); ++b) {
        if (std::equal(o.begin(), o.end(), t.begin() + static_cast<std::ptrdiff_t>(b))) {
          return "";
        }
      }
      return "not a sub-span after the first word";
    }
    case CorruptionKind::kSearchReplace:
      if (!train_summaries.count(out)) return "not a training summary";
      if (SharedBigrams(truth, out) < 4) return "fewer than four shared bigrams";
      return "";
    case CorruptionKind::kSwapSegments: {
      auto a = t, b = o;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      return a == b ? "" : "not a word permutation";
    }
    case CorruptionKind::kNegation: {
      if (o.size() != t.size()) return "word count changed";
      size_t diffs = 0, at = 0;
      for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] != o[i]) {
          ++diffs;
          at = i;
        }
      }
      if (diffs != 1) return "not exactly one word changed";
      if (!IsTogglePair(t[at], o[at])) return "change is not an auxiliary toggle";
      for (size_t i = 0; i < at; ++i) {
        if (IsAuxiliaryForm(t[i])) return "an earlier auxiliary was skipped";
      }
      return "";
    }
    case CorruptionKind::kEntityReplacement: {
      size_t p = 0;
      while (p < t.size() && p < o.size() && t[p] == o[p]) ++p;
      size_t s = 0;
      while (s < t.size() - p && s < o.size() - p &&
             t[t.size() - 1 - s] == o[o.size() - 1 - s]) {
        ++s;
      }
      for (size_t i = p; i < t.size() - s; ++i) {
        if (!StartsUpper(t[i])) return "removed words are not capitalised";
      }
      for (size_t i = p; i < o.size() - s; ++i) {
        if (!StartsUpper(o[i])) return "inserted words are not capitalised";
      }
      // The changed region must sit inside one maximal capitalised run.
      size_t anchor = p < t.size() && StartsUpper(t[p]) ? p : (p > 0 ? p - 1 : 0);
      if (anchor >= t.size() || !StartsUpper(t[anchor])) return "no entity at the change";
      size_t lo = anchor, hi = anchor + 1;
      while (lo > 0 && StartsUpper(t[lo - 1])) --lo;
      while (hi < t.size() && StartsUpper(t[hi])) ++hi;
      if (p < lo || t.size() - s > hi) return "change spans more than one entity";
      return "";
    }
    case CorruptionKind::kOriginal:
      return "not a negative kind";
  }
  return "unknown kind";
}

}  // namespace ogsum::testing

#endif  // OGSUM_TESTS_CORRUPTION_ORACLE_H_
