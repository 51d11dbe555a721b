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

#include "decoder/beam_search.h"

#include <algorithm>
#include <map>

#include "core/error.h"
#include "core/vocab.h"

namespace ogsum::decoder {

namespace {

struct Expansion {
  double logp;
  uint32_t slot;
  TokenId token;
};

struct Candidate {
  double score;
  uint32_t parent;
  uint32_t slot;
  TokenId token;
  uint32_t seq;  // generation index, the cross-state tie-break
};

}  // namespace

GeneratorScorer::GeneratorScorer(const model::Generator& model,
                                 std::span<const TokenId> source)
    : model_(model), context_(model.EncodeSource(source)) {}

nn::Mat GeneratorScorer::LogProbs(std::span<const TokenId> slots) const {
  return model_.LogProbs(context_, slots);
}

size_t PositionMask::open_count() const {
  return static_cast<size_t>(std::count(open_.begin(), open_.end(), 1));
}

Hypothesis PosAwareBeam(const SlotScorer& scorer, const BeamConfig& config) {
  const size_t k = config.beam_size;
  const size_t len = config.length;
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "beam size must be >= 1");
  if (len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "summary length must be >= 1");
  }
  if (len > scorer.max_length()) {
    throw Error(ErrorCode::kOutOfRange, "summary length exceeds max_tgt_len");
  }
  const size_t vocab = scorer.vocab_size();
  if (vocab <= static_cast<size_t>(Vocabulary::kNumSpecials)) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary has no content tokens");
  }

  std::vector<BeamState> beam;
  beam.push_back(BeamState{0.0, PartialSummary(len), PositionMask(len, vocab)});

  std::vector<Expansion> expansions;
  std::vector<Candidate> candidates;
  for (size_t round = 0; round < len; ++round) {
    candidates.clear();
    // Identical partial summaries give identical predictions; compute once.
    std::map<std::vector<TokenId>, nn::Mat> predictions;
    for (size_t h = 0; h < beam.size(); ++h) {
      const BeamState& state = beam[h];
      std::vector<TokenId> key(state.partial.tokens().begin(),
                               state.partial.tokens().end());
      auto it = predictions.find(key);
      if (it == predictions.end()) {
        it = predictions.emplace(key, scorer.LogProbs(key)).first;
      }
      const nn::Mat& logp = it->second;

      expansions.clear();
      for (size_t slot = 0; slot < len; ++slot) {
        if (!state.mask.open(slot)) continue;  // taken rows score -inf
        for (size_t tok = Vocabulary::kNumSpecials; tok < vocab; ++tok) {
          expansions.push_back(Expansion{logp(slot, tok),
                                         static_cast<uint32_t>(slot),
                                         static_cast<TokenId>(tok)});
        }
      }
      const size_t take = std::min(k, expansions.size());
      std::partial_sort(expansions.begin(), expansions.begin() + take,
                        expansions.end(),
                        [](const Expansion& a, const Expansion& b) {
                          if (a.logp != b.logp) return a.logp > b.logp;
                          if (a.slot != b.slot) return a.slot < b.slot;
                          return a.token < b.token;
                        });
      for (size_t i = 0; i < take; ++i) {
        const Expansion& e = expansions[i];
        candidates.push_back(Candidate{state.score + e.logp,
                                       static_cast<uint32_t>(h), e.slot, e.token,
                                       static_cast<uint32_t>(candidates.size())});
      }
    }
    const size_t keep = std::min(k, candidates.size());
    std::partial_sort(candidates.begin(), candidates.begin() + keep,
                      candidates.end(),
                      [](const Candidate& a, const Candidate& b) {
                        if (a.score != b.score) return a.score > b.score;
                        return a.seq < b.seq;
                      });
    std::vector<BeamState> next;
    next.reserve(keep);
    for (size_t i = 0; i < keep; ++i) {
      const Candidate& c = candidates[i];
      BeamState s = beam[c.parent];
      s.score = c.score;
      s.partial.Fill(c.slot, c.token);
      s.mask.Take(c.slot);
      next.push_back(std::move(s));
    }
    beam = std::move(next);
  }

  const BeamState& best = beam.front();
  Hypothesis hyp;
  hyp.tokens.assign(best.partial.tokens().begin(), best.partial.tokens().end());
  hyp.order.assign(best.partial.steps().begin(), best.partial.steps().end());
  hyp.score = best.score;
  return hyp;
}

Hypothesis PosAwareBeam(const model::Generator& model,
                        std::span<const TokenId> source,
                        const BeamConfig& config) {
  const GeneratorScorer scorer(model, source);
  return PosAwareBeam(scorer, config);
}

GreedyResult GreedyLeftToRight(const SlotScorer& scorer, size_t max_length) {
  if (max_length > scorer.max_length()) {
    throw Error(ErrorCode::kOutOfRange, "max length exceeds max_tgt_len");
  }
  GreedyResult result;
  std::vector<TokenId> slots(max_length, Vocabulary::kMask);
  for (size_t i = 0; i < max_length; ++i) {
    const nn::Mat logp = scorer.LogProbs(slots);
    TokenId best = -1;
    double best_lp = 0.0;
    for (Eigen::Index tok = 0; tok < logp.cols(); ++tok) {
      if (tok == Vocabulary::kMask || tok == Vocabulary::kPad) continue;
      if (best < 0 || logp(i, tok) > best_lp) {
        best = static_cast<TokenId>(tok);
        best_lp = logp(i, tok);
      }
    }
    if (best == Vocabulary::kSep) {
      result.predicted_length = result.tokens.size();
      return result;
    }
    slots[i] = best;
    result.tokens.push_back(best);
  }
  result.predicted_length = max_length;
  result.truncated = true;
  return result;
}

GreedyResult GreedyLeftToRight(const model::Generator& model,
                               std::span<const TokenId> source,
                               size_t max_length) {
  const GeneratorScorer scorer(model, source);
  return GreedyLeftToRight(scorer, max_length);
}

std::vector<Hypothesis> OverGenerate(const model::Generator& model,
                                     std::span<const TokenId> source,
                                     size_t min_length, size_t max_length,
                                     size_t beam_size) {
  if (min_length < 1 || min_length > max_length) {
    throw Error(ErrorCode::kInvalidArgument, "empty length range");
  }
  const GeneratorScorer scorer(model, source);
  std::vector<Hypothesis> out;
  for (size_t len = min_length; len <= max_length; ++len) {
    out.push_back(PosAwareBeam(scorer, BeamConfig{beam_size, len}));
  }
  return out;
}

double ReplayScore(const SlotScorer& scorer, const Hypothesis& hyp) {
  const auto slots = SlotsInFillOrder(hyp.order);
  PartialSummary partial(hyp.length());
  double score = 0.0;
  for (size_t slot : slots) {
    const nn::Mat logp = scorer.LogProbs(partial.tokens());
    score += logp(slot, hyp.tokens[slot]);
    partial.Fill(slot, hyp.tokens[slot]);
  }
  return score;
}

}  // namespace ogsum::decoder
