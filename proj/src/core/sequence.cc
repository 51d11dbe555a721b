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

#include "core/sequence.h"

#include <string>

#include "core/error.h"
#include "core/vocab.h"

namespace ogsum {

PartialSummary::PartialSummary(size_t length)
    : tokens_(length, Vocabulary::kMask), steps_(length, 0) {}

void PartialSummary::Fill(size_t slot, TokenId token) {
  if (slot >= tokens_.size()) {
    throw Error(ErrorCode::kOutOfRange,
                "slot " + std::to_string(slot) + " out of range");
  }
  if (steps_[slot] != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "slot " + std::to_string(slot) + " already filled");
  }
  if (token == Vocabulary::kMask) {
    throw Error(ErrorCode::kInvalidArgument, "cannot fill a slot with MASK");
  }
  tokens_[slot] = token;
  steps_[slot] = static_cast<int>(++filled_);
}

bool PartialSummary::StepsFormPrefix() const {
  std::vector<bool> seen(filled_ + 1, false);
  size_t count = 0;
  for (size_t i = 0; i < steps_.size(); ++i) {
    const int s = steps_[i];
    if (s == 0) {
      if (tokens_[i] != Vocabulary::kMask) return false;
      continue;
    }
    if (s < 0 || static_cast<size_t>(s) > filled_ || seen[s]) return false;
    seen[s] = true;
    ++count;
  }
  return count == filled_;
}

bool IsPermutationOfSteps(std::span<const int> order) {
  std::vector<bool> seen(order.size() + 1, false);
  for (int s : order) {
    if (s < 1 || static_cast<size_t>(s) > order.size() || seen[s]) return false;
    seen[s] = true;
  }
  return true;
}

std::vector<size_t> SlotsInFillOrder(std::span<const int> order) {
  if (!IsPermutationOfSteps(order)) {
    throw Error(ErrorCode::kInvalidArgument, "order is not a permutation");
  }
  std::vector<size_t> slots(order.size());
  for (size_t i = 0; i < order.size(); ++i) slots[order[i] - 1] = i;
  return slots;
}

}  // namespace ogsum
