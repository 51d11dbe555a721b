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

#include "corruptor/bigram_index.h"

#include <algorithm>

#include "core/vocab.h"

namespace ogsum::corruptor {

std::vector<std::string> DistinctBigrams(const std::string& text) {
  const auto words = SplitWords(text);
  std::vector<std::string> out;
  for (size_t i = 0; i + 1 < words.size(); ++i) {
    out.push_back(words[i] + ' ' + words[i + 1]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BigramIndex::BigramIndex(std::span<const std::string> summaries)
    : summaries_(summaries.begin(), summaries.end()) {
  bigrams_.reserve(summaries_.size());
  for (size_t id = 0; id < summaries_.size(); ++id) {
    bigrams_.push_back(DistinctBigrams(summaries_[id]));
    for (const auto& bg : bigrams_.back()) postings_[bg].push_back(id);
  }
}

size_t BigramIndex::SharedCount(size_t a, size_t b) const {
  const auto& x = bigrams_.at(a);
  const auto& y = bigrams_.at(b);
  size_t i = 0, j = 0, n = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] == y[j]) {
      ++n;
      ++i;
      ++j;
    } else if (x[i] < y[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return n;
}

std::vector<size_t> BigramIndex::Candidates(size_t id, size_t min_shared) const {
  std::unordered_map<size_t, size_t> counts;
  for (const auto& bg : bigrams_.at(id)) {
    for (size_t other : postings_.at(bg)) {
      if (other != id) ++counts[other];
    }
  }
  std::vector<size_t> out;
  for (const auto& [other, n] : counts) {
    if (n >= min_shared) out.push_back(other);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ogsum::corruptor
