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

#ifndef OGSUM_NN_ADAMW_H_
#define OGSUM_NN_ADAMW_H_

#include <cstdint>
#include <span>
#include <vector>

#include "nn/params.h"

namespace ogsum::nn {

struct AdamWOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.01;
  double clip_norm = 1.0;  // <= 0 disables clipping
  double warmup_fraction = 0.05;
};

// AdamW with decoupled weight decay, global-norm gradient clipping, linear
// warmup and linear decay to zero over `total_steps`.
class AdamW {
 public:
  AdamW(const ParamLayout& layout, const AdamWOptions& options,
        int64_t total_steps);

  double LearningRate(int64_t step) const;

  // Applies one update; returns the (pre-clip) gradient norm.
  double Step(std::span<double> params, std::span<const double> grad);

  int64_t steps_taken() const { return t_; }

 private:
  const ParamLayout& layout_;
  AdamWOptions options_;
  int64_t total_steps_;
  int64_t t_ = 0;
  std::vector<double> m_;
  std::vector<double> v_;
  std::vector<bool> decay_mask_;
};

}  // namespace ogsum::nn

#endif  // OGSUM_NN_ADAMW_H_
