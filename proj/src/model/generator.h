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

#ifndef OGSUM_MODEL_GENERATOR_H_
#define OGSUM_MODEL_GENERATOR_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "core/sequence.h"
#include "nn/params.h"
#include "nn/transformer.h"

namespace ogsum::model {

struct ModelConfig {
  size_t blocks = 2;
  size_t hidden = 64;
  size_t heads = 4;
  size_t ffn = 0;  // 0 means 4 * hidden
  size_t max_src_len = 40;
  size_t max_tgt_len = 20;
  uint64_t seed = 1;

  size_t ffn_width() const { return ffn ? ffn : 4 * hidden; }
  void Validate() const;

  // Single-line "key=value ..." form embedded in checkpoints.
  std::string ToHeader() const;
  static ModelConfig FromHeader(const std::string& header);

  bool operator==(const ModelConfig&) const = default;
};

// L x |V| per-slot token distributions.
struct ProbMatrix {
  nn::Mat probs;

  size_t length() const { return static_cast<size_t>(probs.rows()); }
  size_t vocab() const { return static_cast<size_t>(probs.cols()); }
};

// A reconstruction target: row indexes the concatenated [source ; slots]
// sequence.
struct Target {
  size_t row = 0;
  TokenId original = 0;
};

struct CorruptedExample {
  TokenSeq source;
  TokenSeq slots;
  std::vector<Target> targets;
};

// Source-side activations reused across every prediction for one source.
// Source rows attend only to source rows, so they never depend on the
// summary slots.
struct SourceContext {
  nn::PrefixCache cache;
  size_t length = 0;
};

// Masked denoising generator. Predicts a distribution for every summary slot
// at once, conditioned on the source and on whichever slots are filled.
class Generator {
 public:
  Generator(const ModelConfig& config, size_t vocab_size);

  const ModelConfig& config() const { return config_; }
  size_t vocab_size() const { return vocab_size_; }
  const nn::ParamLayout& layout() const { return layout_; }
  std::span<const double> params() const { return params_; }
  std::span<double> mutable_params() { return params_; }
  size_t num_params() const { return params_.size(); }

  int64_t step_count() const { return step_count_; }
  void set_step_count(int64_t n) { step_count_ = n; }

  // Sets the output projection (weights and bias) to zero.
  void ZeroOutputProjection();

  SourceContext EncodeSource(std::span<const TokenId> source) const;

  // L x |V| natural-log probabilities; `slots` holds MASK for open slots.
  nn::Mat LogProbs(const SourceContext& source,
                   std::span<const TokenId> slots) const;

  ProbMatrix PredictAllPositions(std::span<const TokenId> source,
                                 const PartialSummary& partial) const;

  // Mean negative log-likelihood over all targets of the batch.
  double Loss(std::span<const CorruptedExample> batch) const;
  // Same value; adds d(loss)/d(params) into `grad`.
  double LossAndGrad(std::span<const CorruptedExample> batch,
                     std::span<double> grad) const;

  void Save(const std::string& path) const;
  // Fails when the checkpoint's vocabulary size differs from
  // `expected_vocab_size`.
  static Generator Load(const std::string& path, size_t expected_vocab_size);

 private:
  std::vector<int> Positions(size_t n_src, size_t n_slots) const;
  void CheckLengths(size_t n_src, size_t n_slots) const;

  ModelConfig config_;
  size_t vocab_size_;
  nn::ParamLayout layout_;
  nn::TransformerTrunk trunk_;
  size_t out_w_ = 0;
  size_t out_b_ = 0;
  nn::ParamBuffer params_;
  int64_t step_count_ = 0;
};

}  // namespace ogsum::model

#endif  // OGSUM_MODEL_GENERATOR_H_
