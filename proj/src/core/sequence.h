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

#ifndef OGSUM_CORE_SEQUENCE_H_
#define OGSUM_CORE_SEQUENCE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace ogsum {

using TokenId = int32_t;
using TokenSeq = std::vector<TokenId>;

// A fixed-length summary under construction. Open slots hold the MASK id;
// a filled slot remembers the step (1-based) at which it was filled. Steps
// over filled slots are always exactly 1..filled_count().
class PartialSummary {
 public:
  explicit PartialSummary(size_t length);

  size_t length() const { return tokens_.size(); }
  size_t filled_count() const { return filled_; }
  bool complete() const { return filled_ == tokens_.size(); }

  bool is_filled(size_t slot) const { return steps_.at(slot) != 0; }
  TokenId token(size_t slot) const { return tokens_.at(slot); }
  // 0 for an open slot.
  int step(size_t slot) const { return steps_.at(slot); }

  // Throws if the slot is out of range or already filled, or if `token` is
  // the MASK id.
  void Fill(size_t slot, TokenId token);

  std::span<const TokenId> tokens() const { return tokens_; }
  std::span<const int> steps() const { return steps_; }

  // Re-derives the step-prefix invariant from scratch.
  bool StepsFormPrefix() const;

  bool operator==(const PartialSummary& other) const {
    return tokens_ == other.tokens_ && steps_ == other.steps_;
  }

 private:
  std::vector<TokenId> tokens_;
  std::vector<int> steps_;
  size_t filled_ = 0;
};

// A completed length-L summary: tokens, the step at which each slot was
// filled (a permutation of 1..L), and the summed natural-log probability of
// the fills.
struct Hypothesis {
  TokenSeq tokens;
  std::vector<int> order;
  double score = 0.0;

  size_t length() const { return tokens.size(); }
};

// True when `order` is a permutation of 1..order.size().
bool IsPermutationOfSteps(std::span<const int> order);

// Slot indices sorted by the step that filled them.
std::vector<size_t> SlotsInFillOrder(std::span<const int> order);

}  // namespace ogsum

#endif  // OGSUM_CORE_SEQUENCE_H_
