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

#ifndef OGSUM_SELECTOR_SCORING_H_
#define OGSUM_SELECTOR_SCORING_H_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/sequence.h"

namespace ogsum::selector {

struct LengthRewardConfig {
  double r = 2.0;
  double p = 1.0;
  double l_pred = 0.0;

  void Validate() const;
};

// S / len^p. Throws for len == 0.
double ScoreLengthNorm(double log_likelihood, size_t len, double p);

// S + r * min(len, L_pred).
double ScoreReward(double log_likelihood, size_t len, double l_pred, double r);

enum class SelectMode { kBestQuality, kBestLength, kLengthNorm, kAverage };

// CLI names: quality, length, lennorm, average.
std::string_view ModeName(SelectMode mode);
SelectMode ModeFromName(std::string_view name);

struct Candidate {
  TokenSeq tokens;
  std::string text;  // detokenised summary, used by best_quality
  double score = 0.0;
};

struct SelectContext {
  // Admissibility probability for a summary text (best_quality).
  std::function<double(const std::string&)> quality;
  // Required by best_length and length_norm.
  std::optional<LengthRewardConfig> reward;
};

struct Selection {
  // One index for argmax modes; every index for kAverage.
  std::vector<size_t> chosen;
  double score = 0.0;
  std::optional<double> probability;
};

// Argmax over candidates under the mode's key; ties go to the shorter
// candidate, then to the lexicographically smaller token sequence, so the
// result does not depend on input order. Throws on an empty list or when the
// context lacks what the mode needs.
Selection Select(std::span<const Candidate> candidates, SelectMode mode,
                 const SelectContext& ctx);

}  // namespace ogsum::selector

#endif  // OGSUM_SELECTOR_SCORING_H_
