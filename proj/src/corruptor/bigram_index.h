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

#ifndef OGSUM_CORRUPTOR_BIGRAM_INDEX_H_
#define OGSUM_CORRUPTOR_BIGRAM_INDEX_H_

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ogsum::corruptor {

// Inverted index from word bigram to the summaries containing it. Bigrams are
// over whitespace tokens, compared exactly, and counted once per summary.
class BigramIndex {
 public:
  BigramIndex() = default;
  explicit BigramIndex(std::span<const std::string> summaries);

  size_t size() const { return bigrams_.size(); }
  const std::string& summary(size_t id) const { return summaries_.at(id); }

  // Sorted distinct bigrams of summary `id`, each encoded "w1 w2".
  const std::vector<std::string>& bigrams(size_t id) const {
    return bigrams_.at(id);
  }

  size_t SharedCount(size_t a, size_t b) const;

  // Ids other than `id` sharing at least `min_shared` bigrams, ascending.
  std::vector<size_t> Candidates(size_t id, size_t min_shared) const;

 private:
  std::vector<std::string> summaries_;
  std::vector<std::vector<std::string>> bigrams_;
  std::unordered_map<std::string, std::vector<size_t>> postings_;
};

std::vector<std::string> DistinctBigrams(const std::string& text);

}  // namespace ogsum::corruptor

#endif  // OGSUM_CORRUPTOR_BIGRAM_INDEX_H_
