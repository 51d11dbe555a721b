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

#include "selector/scoring.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"

namespace ogsum::selector {

void LengthRewardConfig::Validate() const {
  if (!(r >= 0) || !(p >= 0) || !(l_pred >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "r, p and L_pred must be >= 0");
  }
}

double ScoreLengthNorm(double log_likelihood, size_t len, double p) {
  if (len == 0) throw Error(ErrorCode::kInvalidArgument, "length must be >= 1");
  return log_likelihood / std::pow(static_cast<double>(len), p);
}

double ScoreReward(double log_likelihood, size_t len, double l_pred, double r) {
  return log_likelihood + r * std::min(static_cast<double>(len), l_pred);
}

std::string_view ModeName(SelectMode mode) {
  switch (mode) {
    case SelectMode::kBestQuality: return "quality";
    case SelectMode::kBestLength: return "length";
    case SelectMode::kLengthNorm: return "lennorm";
    case SelectMode::kAverage: return "average";
  }
  return "";
}

SelectMode ModeFromName(std::string_view name) {
  for (auto m : {SelectMode::kBestQuality, SelectMode::kBestLength,
                 SelectMode::kLengthNorm, SelectMode::kAverage}) {
    if (ModeName(m) == name) return m;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown selection mode '" + std::string(name) + "'");
}

Selection Select(std::span<const Candidate> candidates, SelectMode mode,
                 const SelectContext& ctx) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no hypotheses to select from");
  }
  for (const auto& c : candidates) {
    if (c.tokens.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty hypothesis");
    }
  }
  Selection sel;
  if (mode == SelectMode::kAverage) {
    std::vector<size_t> idx(candidates.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
      return candidates[a].tokens.size() < candidates[b].tokens.size();
    });
    sel.chosen = std::move(idx);
    return sel;
  }
  if (mode == SelectMode::kBestQuality && !ctx.quality) {
    throw Error(ErrorCode::kInvalidArgument, "best_quality needs a classifier");
  }
  if (mode != SelectMode::kBestQuality) {
    if (!ctx.reward) {
      throw Error(ErrorCode::kInvalidArgument,
                  "length modes need a reward configuration");
    }
    ctx.reward->Validate();
  }

  std::vector<double> key(candidates.size());
  std::vector<double> prob(candidates.size(), 0.0);
  for (size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    switch (mode) {
      case SelectMode::kBestQuality:
        prob[i] = ctx.quality(c.text);
        key[i] = prob[i];
        break;
      case SelectMode::kBestLength:
        key[i] = ScoreReward(c.score, c.tokens.size(), ctx.reward->l_pred,
                             ctx.reward->r);
        break;
      case SelectMode::kLengthNorm:
        key[i] = ScoreLengthNorm(c.score, c.tokens.size(), ctx.reward->p);
        break;
      case SelectMode::kAverage:
        break;
    }
  }
  size_t best = 0;
  for (size_t i = 1; i < candidates.size(); ++i) {
    const auto& a = candidates[i];
    const auto& b = candidates[best];
    if (key[i] != key[best]) {
      if (key[i] > key[best]) best = i;
    } else if (a.tokens.size() != b.tokens.size()) {
      if (a.tokens.size() < b.tokens.size()) best = i;
    } else if (a.tokens < b.tokens) {
      best = i;
    }
  }
  sel.chosen = {best};
  sel.score = key[best];
  if (mode == SelectMode::kBestQuality) sel.probability = prob[best];
  return sel;
}

}  // namespace ogsum::selector
