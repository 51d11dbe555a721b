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

#ifndef OGSUM_CORRUPTOR_CORRUPTIONS_H_
#define OGSUM_CORRUPTOR_CORRUPTIONS_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/random.h"
#include "corruptor/bigram_index.h"

namespace ogsum::corruptor {

// Each corruption returns std::nullopt ("skip") when it does not apply to the
// given summary; callers draw another example.

// Word spans [begin, end) of entity mentions: maximal runs of capitalised
// words. A run at the start of the sentence counts only when it opens with an
// acronym (all capitals, two or more letters), so "German experts ..." has
// no initial entity while "UN extends ..." does.
std::vector<std::pair<size_t, size_t>> EntitySpans(
    std::span<const std::string> words);

// Sorted distinct entity strings found in `summaries`.
std::vector<std::string> HarvestEntities(std::span<const std::string> summaries);

// Replaces one uniformly chosen entity span with a uniformly chosen pool
// entity different from it.
std::optional<std::string> EntityReplace(const std::string& summary,
                                         std::span<const std::string> pool,
                                         Rng& rng);

// Toggles the first auxiliary or modal verb: bare forms gain the negative
// contraction, contracted negatives lose it.
std::optional<std::string> Negate(const std::string& summary);

// A contiguous span of 1-5 words that excludes the first word and contains
// at least one alphanumeric character. Needs more than five words.
std::optional<std::string> TruncateIncomplete(const std::string& summary,
                                              Rng& rng);

// A different summary sharing at least 4 bigrams with summary `id`, uniform
// over qualifying candidates.
std::optional<std::string> SearchReplace(size_t id, const BigramIndex& index,
                                         Rng& rng);

// Splits after word floor(n/2) and swaps the two parts.
std::optional<std::string> SwapSegments(const std::string& summary);

inline constexpr size_t kMinSharedBigrams = 4;
inline constexpr size_t kMaxIncompleteWords = 5;

}  // namespace ogsum::corruptor

#endif  // OGSUM_CORRUPTOR_CORRUPTIONS_H_
