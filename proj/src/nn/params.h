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

#ifndef OGSUM_NN_PARAMS_H_
#define OGSUM_NN_PARAMS_H_

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace ogsum::nn {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVec = Eigen::Matrix<double, 1, Eigen::Dynamic>;
using ColVec = Eigen::VectorXd;
using ConstMatMap = Eigen::Map<const Mat>;
using MatMap = Eigen::Map<Mat>;
using ConstRowMap = Eigen::Map<const RowVec>;
using RowMap = Eigen::Map<RowVec>;

// A named rows x cols tensor inside a flat parameter buffer.
struct TensorSlot {
  std::string name;
  size_t offset = 0;
  size_t rows = 0;
  size_t cols = 0;
  bool decay = false;  // subject to weight decay

  size_t size() const { return rows * cols; }
};

// Registry of all tensors of a model. Parameters and gradients share the
// layout, so both live in flat ParamBuffer storage.
class ParamLayout {
 public:
  size_t Add(std::string name, size_t rows, size_t cols, bool decay);

  const TensorSlot& slot(size_t i) const { return slots_[i]; }
  const std::vector<TensorSlot>& slots() const { return slots_; }
  size_t total() const { return total_; }

  ConstMatMap Map(std::span<const double> buf, size_t i) const {
    const auto& s = slots_[i];
    return ConstMatMap(buf.data() + s.offset, s.rows, s.cols);
  }
  MatMap Map(std::span<double> buf, size_t i) const {
    const auto& s = slots_[i];
    return MatMap(buf.data() + s.offset, s.rows, s.cols);
  }
  ConstRowMap Row(std::span<const double> buf, size_t i) const {
    const auto& s = slots_[i];
    return ConstRowMap(buf.data() + s.offset, s.size());
  }
  RowMap Row(std::span<double> buf, size_t i) const {
    const auto& s = slots_[i];
    return RowMap(buf.data() + s.offset, s.size());
  }

 private:
  std::vector<TensorSlot> slots_;
  size_t total_ = 0;
};

// 64-byte aligned flat storage.
using ParamBuffer = std::vector<double, Eigen::aligned_allocator<double>>;

bool AllFinite(std::span<const double> v);

}  // namespace ogsum::nn

#endif  // OGSUM_NN_PARAMS_H_
