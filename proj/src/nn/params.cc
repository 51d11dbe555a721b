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

#include "nn/params.h"

#include <cmath>

namespace ogsum::nn {

size_t ParamLayout::Add(std::string name, size_t rows, size_t cols,
                        bool decay) {
  TensorSlot s;
  s.name = std::move(name);
  s.offset = total_;
  s.rows = rows;
  s.cols = cols;
  s.decay = decay;
  total_ += s.size();
  slots_.push_back(std::move(s));
  return slots_.size() - 1;
}

bool AllFinite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace ogsum::nn
