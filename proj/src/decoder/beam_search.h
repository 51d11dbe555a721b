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

#ifndef OGSUM_DECODER_BEAM_SEARCH_H_
#define OGSUM_DECODER_BEAM_SEARCH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "core/sequence.h"
#include "model/generator.h"
#include "nn/params.h"

namespace ogsum::decoder {

// What the decoder needs from a model: log-probabilities for every slot of a
// fixed-length summary, for one already-bound source.
class SlotScorer {
 public:
  virtual ~SlotScorer() = default;
  virtual nn::Mat LogProbs(std::span<const TokenId> slots) const = 0;
  virtual size_t vocab_size() const = 0;
  virtual size_t max_length() const = 0;
};

// Binds a Generator to one source; the source encoding is computed once.
class GeneratorScorer : public SlotScorer {
 public:
  GeneratorScorer(const model::Generator& model, std::span<const TokenId> source);

  nn::Mat LogProbs(std::span<const TokenId> slots) const override;
  size_t vocab_size() const override { return model_.vocab_size(); }
  size_t max_length() const override { return model_.config().max_tgt_len; }

 private:
  const model::Generator& model_;
  model::SourceContext context_;
};

// Row-uniform binary L x |V| matrix: a row is all ones while its slot is open
// and all zeros once taken. Stored as one flag per row.
class PositionMask {
 public:
  PositionMask(size_t length, size_t vocab_size)
      : open_(length, 1), vocab_size_(vocab_size) {}

  size_t rows() const { return open_.size(); }
  size_t cols() const { return vocab_size_; }
  uint8_t at(size_t row, size_t /*col*/) const { return open_.at(row); }
  bool open(size_t row) const { return open_.at(row) != 0; }
  void Take(size_t row) { open_.at(row) = 0; }
  size_t open_count() const;

 private:
  std::vector<uint8_t> open_;
  size_t vocab_size_;
};

struct BeamState {
  double score = 0.0;
  PartialSummary partial;
  PositionMask mask;
};

struct BeamConfig {
  size_t beam_size = 20;
  size_t length = 10;
};

// Position-aware beam search. Runs exactly `length` rounds; each state is
// expanded by its K best (slot, token) pairs over open slots and the K best
// candidates survive. Special tokens are never placed. Ties: lower slot,
// then lower token id within a state; earlier-generated candidate across
// states. Identical partial summaries reached by different orders are kept
// as distinct states.
Hypothesis PosAwareBeam(const SlotScorer& scorer, const BeamConfig& config);
Hypothesis PosAwareBeam(const model::Generator& model,
                        std::span<const TokenId> source,
                        const BeamConfig& config);

struct GreedyResult {
  TokenSeq tokens;
  size_t predicted_length = 0;
  bool truncated = false;  // SEP never emitted
};

// Fills the leftmost open slot with its argmax token (MASK and PAD excluded)
// until SEP is produced or all `max_length` slots are filled.
GreedyResult GreedyLeftToRight(const SlotScorer& scorer, size_t max_length);
GreedyResult GreedyLeftToRight(const model::Generator& model,
                               std::span<const TokenId> source,
                               size_t max_length);

// One hypothesis per length in [min_length, max_length], ascending.
std::vector<Hypothesis> OverGenerate(const model::Generator& model,
                                     std::span<const TokenId> source,
                                     size_t min_length, size_t max_length,
                                     size_t beam_size);

// Re-scores a hypothesis by filling its slots in recorded order.
double ReplayScore(const SlotScorer& scorer, const Hypothesis& hyp);

}  // namespace ogsum::decoder

#endif  // OGSUM_DECODER_BEAM_SEARCH_H_
