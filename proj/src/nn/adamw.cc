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

#include "nn/adamw.h"

#include <algorithm>
#include <cmath>

namespace ogsum::nn {

AdamW::AdamW(const ParamLayout& layout, const AdamWOptions& options,
             int64_t total_steps)
    : layout_(layout),
      options_(options),
      total_steps_(std::max<int64_t>(total_steps, 1)),
      m_(layout.total(), 0.0),
      v_(layout.total(), 0.0),
      decay_mask_(layout.total(), false) {
  for (const auto& s : layout_.slots()) {
    std::fill(decay_mask_.begin() + s.offset,
              decay_mask_.begin() + s.offset + s.size(), s.decay);
  }
}

double AdamW::LearningRate(int64_t step) const {
  const int64_t warmup = static_cast<int64_t>(
      std::ceil(options_.warmup_fraction * static_cast<double>(total_steps_)));
  if (warmup > 0 && step < warmup) {
    return options_.lr * static_cast<double>(step + 1) /
           static_cast<double>(warmup);
  }
  const double remain = static_cast<double>(total_steps_ - step) /
                        static_cast<double>(std::max<int64_t>(
                            total_steps_ - warmup, 1));
  return options_.lr * std::clamp(remain, 0.0, 1.0);
}

double AdamW::Step(std::span<double> params, std::span<const double> grad) {
  double sq = 0.0;
  for (double g : grad) sq += g * g;
  const double norm = std::sqrt(sq);
  const double clip = (options_.clip_norm > 0 && norm > options_.clip_norm)
                          ? options_.clip_norm / norm
                          : 1.0;
  const double lr = LearningRate(t_);
  ++t_;
  const double bc1 = 1.0 - std::pow(options_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(options_.beta2, static_cast<double>(t_));
  for (size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i] * clip;
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * g;
    v_[i] = options_.beta2 * v_[i] + (1.0 - options_.beta2) * g * g;
    const double mhat = m_[i] / bc1;
    const double vhat = v_[i] / bc2;
    if (decay_mask_[i]) params[i] -= lr * options_.weight_decay * params[i];
    params[i] -= lr * mhat / (std::sqrt(vhat) + options_.eps);
  }
  return norm;
}

}  // namespace ogsum::nn
