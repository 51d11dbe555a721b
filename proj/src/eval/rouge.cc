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

#include "eval/rouge.h"

#include <algorithm>
#include <cctype>
#include <map>

#include "core/error.h"

namespace ogsum::eval {

namespace {

std::map<std::vector<std::string>, size_t> NGramCounts(
    std::span<const std::string> toks, int n) {
  std::map<std::vector<std::string>, size_t> counts;
  const size_t m = static_cast<size_t>(n);
  for (size_t i = 0; i + m <= toks.size(); ++i) {
    ++counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + m)];
  }
  return counts;
}

size_t NGramTotal(size_t tokens, int n) {
  const size_t m = static_cast<size_t>(n);
  return tokens >= m ? tokens - m + 1 : 0;
}

void CheckOrder(int n) {
  if (n != 1 && n != 2) {
    throw Error(ErrorCode::kInvalidArgument, "ROUGE-N supports n = 1 or 2");
  }
}

}  // namespace

std::vector<std::string> RougeTokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    while (!cur.empty() && cur.back() == '.') cur.pop_back();
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  flush();
  return out;
}

RougeScore FromCounts(size_t overlap, size_t candidate, size_t reference) {
  RougeScore s;
  if (candidate > 0) s.precision = static_cast<double>(overlap) / static_cast<double>(candidate);
  if (reference > 0) s.recall = static_cast<double>(overlap) / static_cast<double>(reference);
  if (s.precision + s.recall > 0) {
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

size_t ClippedOverlap(std::span<const std::string> a,
                      std::span<const std::string> b, int n) {
  CheckOrder(n);
  const auto ca = NGramCounts(a, n);
  const auto cb = NGramCounts(b, n);
  size_t overlap = 0;
  for (const auto& [gram, count] : ca) {
    auto it = cb.find(gram);
    if (it != cb.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n) {
  CheckOrder(n);
  return FromCounts(ClippedOverlap(candidate, reference, n),
                    NGramTotal(candidate.size(), n),
                    NGramTotal(reference.size(), n));
}

RougeScore RougeN(std::string_view candidate, std::string_view reference, int n) {
  const auto c = RougeTokens(candidate);
  const auto r = RougeTokens(reference);
  return RougeN(c, r, n);
}

size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore RougeL(std::span<const std::string> candidate,
                  std::span<const std::string> reference) {
  return FromCounts(LcsLength(candidate, reference), candidate.size(),
                    reference.size());
}

RougeScore RougeL(std::string_view candidate, std::string_view reference) {
  const auto c = RougeTokens(candidate);
  const auto r = RougeTokens(reference);
  return RougeL(c, r);
}

}  // namespace ogsum::eval
