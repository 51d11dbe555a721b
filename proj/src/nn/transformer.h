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

#ifndef OGSUM_NN_TRANSFORMER_H_
#define OGSUM_NN_TRANSFORMER_H_

#include <span>
#include <string>
#include <vector>

#include "core/random.h"
#include "core/sequence.h"
#include "nn/params.h"

namespace ogsum::nn {

struct TrunkConfig {
  size_t vocab = 0;
  size_t positions = 0;  // rows of the learned position table
  size_t hidden = 0;
  size_t heads = 0;
  size_t ffn = 0;
  size_t blocks = 0;
};

struct BlockTape {
  Mat x;
  Mat xhat1;
  ColVec inv1;
  Mat a;
  Mat q, k, v;
  std::vector<Mat> probs;  // one Tq x Tk matrix per head
  Mat ctx;
  Mat x1;
  Mat xhat2;
  ColVec inv2;
  Mat b;
  Mat hpre;
  Mat g;
};

// Activations kept by Forward for Backward.
struct TrunkTape {
  std::vector<TokenId> ids;
  std::vector<int> positions;
  size_t n_prefix = 0;
  std::vector<BlockTape> blocks;
  Mat x_last;
  Mat xhatf;
  ColVec invf;
};

// Per-block keys/values of a prefix whose rows never attend past the prefix.
struct PrefixCache {
  std::vector<Mat> keys;
  std::vector<Mat> values;
  size_t rows = 0;
};

// Pre-LayerNorm transformer stack: token + position embeddings, `blocks`
// self-attention/GELU feed-forward blocks, final LayerNorm.
//
// Attention pattern: with n_prefix rows designated as prefix, prefix rows
// attend only to prefix rows and every later row attends to all rows. With
// n_prefix == T this is plain bidirectional attention.
class TransformerTrunk {
 public:
  TransformerTrunk() = default;
  // Registers all tensors under `prefix` in `layout`.
  TransformerTrunk(const TrunkConfig& config, const std::string& prefix,
                   ParamLayout& layout);

  const TrunkConfig& config() const { return config_; }

  void Init(const ParamLayout& layout, std::span<double> params,
            Rng& rng) const;

  // Returns the T x hidden final-layer output.
  Mat Forward(const ParamLayout& layout, std::span<const double> params,
              std::span<const TokenId> ids, std::span<const int> positions,
              size_t n_prefix, TrunkTape* tape) const;

  // Accumulates parameter gradients for upstream gradient `d_out`.
  void Backward(const ParamLayout& layout, std::span<const double> params,
                const TrunkTape& tape, const Mat& d_out,
                std::span<double> grad) const;

  PrefixCache EncodePrefix(const ParamLayout& layout,
                           std::span<const double> params,
                           std::span<const TokenId> ids,
                           std::span<const int> positions) const;

  // Output rows for a suffix that attends to the cached prefix and to itself.
  // Numerically the same rows Forward would produce for [prefix ; suffix].
  Mat ForwardSuffix(const ParamLayout& layout, std::span<const double> params,
                    const PrefixCache& cache, std::span<const TokenId> ids,
                    std::span<const int> positions) const;

 private:
  struct BlockSlots {
    size_t ln1_g, ln1_b, wq, bq, wk, bk, wv, bv, wo, bo;
    size_t ln2_g, ln2_b, w1, b1, w2, b2;
  };

  Mat Embed(const ParamLayout& layout, std::span<const double> params,
            std::span<const TokenId> ids, std::span<const int> positions) const;

  TrunkConfig config_;
  size_t tok_emb_ = 0;
  size_t pos_emb_ = 0;
  size_t lnf_g_ = 0;
  size_t lnf_b_ = 0;
  std::vector<BlockSlots> blocks_;
};

// Shared numeric pieces, exposed for tests and for the model heads.
void LayerNormForward(const Mat& x, ConstRowMap gain, ConstRowMap bias,
                      Mat* xhat, ColVec* inv_std, Mat* y);
Mat LayerNormBackward(const Mat& dy, const Mat& xhat, const ColVec& inv_std,
                      ConstRowMap gain, RowMap d_gain, RowMap d_bias);
double Gelu(double x);
double GeluGrad(double x);

// Row-wise log-softmax.
Mat LogSoftmaxRows(const Mat& logits);

}  // namespace ogsum::nn

#endif  // OGSUM_NN_TRANSFORMER_H_
