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

#include <cmath>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "core/error.h"
#include "core/random.h"
#include "core/vocab.h"
#include "decoder/beam_search.h"
#include "model/generator.h"
#include "test_support.h"

namespace ogsum::decoder {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Every row puts all mass on a fixed token.
class OneHotScorer : public SlotScorer {
 public:
  OneHotScorer(std::vector<TokenId> argmax, size_t vocab)
      : argmax_(std::move(argmax)), vocab_(vocab) {}
  nn::Mat LogProbs(std::span<const TokenId> slots) const override {
    nn::Mat m = nn::Mat::Constant(slots.size(), vocab_, kNegInf);
    for (size_t i = 0; i < slots.size(); ++i) m(i, argmax_[i % argmax_.size()]) = 0.0;
    return m;
  }
  size_t vocab_size() const override { return vocab_; }
  size_t max_length() const override { return 20; }

 private:
  std::vector<TokenId> argmax_;
  size_t vocab_;
};

class FlatScorer : public SlotScorer {
 public:
  nn::Mat LogProbs(std::span<const TokenId> slots) const override {
    return nn::Mat::Constant(slots.size(), 7, -std::log(7.0));
  }
  size_t vocab_size() const override { return 7; }
  size_t max_length() const override { return 8; }
};

model::Generator RandomGenerator(size_t vocab, size_t max_tgt, uint64_t seed) {
  model::ModelConfig mc;
  mc.blocks = 1;
  mc.hidden = 8;
  mc.heads = 2;
  mc.ffn = 16;
  mc.max_src_len = 6;
  mc.max_tgt_len = max_tgt;
  mc.seed = seed;
  model::Generator g(mc, vocab);
  // Sharpen the output layer so different orders give different scores.
  Rng rng(seed + 100);
  const auto& w = ogsum::testing::SlotNamed(g.layout(), "gen.out.w");
  for (size_t i = 0; i < w.size(); ++i) g.mutable_params()[w.offset + i] = 2.0 * rng.Normal();
  return g;
}

TokenSeq RandomSource(Rng& rng, size_t vocab) {
  TokenSeq s;
  for (int64_t i = 0, n = rng.Between(1, 6); i < n; ++i) {
    s.push_back(static_cast<TokenId>(rng.Between(4, static_cast<int64_t>(vocab) - 1)));
  }
  return s;
}

TEST(PositionMaskTest, RowsCloseOnce) {
  PositionMask m(3, 5);
  EXPECT_EQ(m.open_count(), 3u);
  m.Take(1);
  EXPECT_FALSE(m.open(1));
  EXPECT_EQ(m.at(1, 4), 0);
  EXPECT_EQ(m.at(0, 4), 1);
  EXPECT_EQ(m.open_count(), 2u);
}

TEST(BeamTest, OneHotModelYieldsArgmaxWithZeroScore) {
  const OneHotScorer scorer({5, 4, 6, 6, 7}, 8);
  for (size_t k : {1u, 3u, 20u}) {
    const Hypothesis h = PosAwareBeam(scorer, BeamConfig{k, 5});
    EXPECT_EQ(h.tokens, (TokenSeq{5, 4, 6, 6, 7}));
    EXPECT_EQ(h.score, 0.0);
    EXPECT_TRUE(IsPermutationOfSteps(h.order));
  }
}

TEST(BeamTest, FlatModelBreaksTiesBySlotThenToken) {
  const FlatScorer scorer;
  const Hypothesis h = PosAwareBeam(scorer, BeamConfig{4, 3});
  EXPECT_EQ(h.tokens, (TokenSeq{4, 4, 4}));
  EXPECT_EQ(h.order, (std::vector<int>{1, 2, 3}));
  EXPECT_NEAR(h.score, -3.0 * std::log(7.0), 1e-12);
}

TEST(BeamTest, ExhaustiveBeamMatchesEnumeration) {
  const size_t vocab = 8;  // four content tokens
  Rng rng(17);
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const model::Generator g = RandomGenerator(vocab, 3, seed);
    const TokenSeq src = RandomSource(rng, vocab);
    const GeneratorScorer scorer(g, src);
    for (size_t len = 1; len <= 3; ++len) {
      const double want = ogsum::testing::ExhaustiveBest(
          [&](const std::vector<TokenId>& slots) {
            const nn::Mat m = scorer.LogProbs(slots);
            ogsum::testing::Table t(m.rows(), std::vector<double>(m.cols()));
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
              for (Eigen::Index j = 0; j < m.cols(); ++j) t[i][j] = m(i, j);
            }
            return t;
          },
          len, vocab);
      const Hypothesis h = PosAwareBeam(scorer, BeamConfig{384, len});
      EXPECT_NEAR(h.score, want, 1e-9) << "seed " << seed << " L=" << len;
    }
  }
}

TEST(BeamTest, ExactLengthReplayableAndNoSpecials) {
  const model::Generator g = RandomGenerator(12, 10, 3);
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const TokenSeq src = RandomSource(rng, 12);
    const GeneratorScorer scorer(g, src);
    const size_t len = static_cast<size_t>(rng.Between(1, 10));
    const Hypothesis h = PosAwareBeam(scorer, BeamConfig{5, len});
    ASSERT_EQ(h.length(), len);
    ASSERT_EQ(h.order.size(), len);
    EXPECT_TRUE(IsPermutationOfSteps(h.order));
    for (TokenId t : h.tokens) EXPECT_FALSE(Vocabulary::IsSpecial(t));
    EXPECT_LE(h.score, 0.0);
    EXPECT_NEAR(ReplayScore(scorer, h), h.score, 1e-9);
  }
}

TEST(BeamTest, GeneratorOverloadAgreesWithScorer) {
  const model::Generator g = RandomGenerator(10, 6, 2);
  const TokenSeq src = {4, 5, 9};
  const Hypothesis a = PosAwareBeam(g, src, BeamConfig{4, 5});
  const Hypothesis b = PosAwareBeam(GeneratorScorer(g, src), BeamConfig{4, 5});
  EXPECT_EQ(a.tokens, b.tokens);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.score, b.score);
}

TEST(BeamTest, InvalidConfigurations) {
  const FlatScorer scorer;
  EXPECT_THROW(PosAwareBeam(scorer, BeamConfig{0, 3}), Error);
  EXPECT_THROW(PosAwareBeam(scorer, BeamConfig{2, 0}), Error);
  EXPECT_THROW(PosAwareBeam(scorer, BeamConfig{2, 9}), Error);
}

TEST(GreedyTest, ImmediateSepPredictsZero) {
  const OneHotScorer scorer({Vocabulary::kSep, 4}, 6);
  const GreedyResult r = GreedyLeftToRight(scorer, 10);
  EXPECT_EQ(r.predicted_length, 0u);
  EXPECT_TRUE(r.tokens.empty());
  EXPECT_FALSE(r.truncated);
}

TEST(GreedyTest, StopsAtFirstSep) {
  const OneHotScorer scorer({4, 5, Vocabulary::kSep, 4, 4, 4}, 6);
  const GreedyResult r = GreedyLeftToRight(scorer, 6);
  EXPECT_EQ(r.tokens, (TokenSeq{4, 5}));
  EXPECT_EQ(r.predicted_length, 2u);
  EXPECT_FALSE(r.truncated);
}

TEST(GreedyTest, NoSepMeansTruncation) {
  const OneHotScorer scorer({4, 5}, 6);
  const GreedyResult r = GreedyLeftToRight(scorer, 7);
  EXPECT_EQ(r.predicted_length, 7u);
  EXPECT_EQ(r.tokens.size(), 7u);
  EXPECT_TRUE(r.truncated);
  EXPECT_THROW(GreedyLeftToRight(scorer, 21), Error);
}

TEST(OverGenerateTest, OneHypothesisPerLength) {
  const model::Generator g = RandomGenerator(12, 16, 4);
  const TokenSeq src = {4, 7, 8, 11};
  const auto hyps = OverGenerate(g, src, 7, 16, 3);
  ASSERT_EQ(hyps.size(), 10u);
  for (size_t i = 0; i < hyps.size(); ++i) {
    EXPECT_EQ(hyps[i].length(), 7 + i);
    EXPECT_LE(hyps[i].score, 0.0);
    for (TokenId t : hyps[i].tokens) {
      EXPECT_NE(t, Vocabulary::kMask);
      EXPECT_NE(t, Vocabulary::kPad);
    }
  }
  const auto single = OverGenerate(g, src, 5, 5, 3);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].length(), 5u);
  EXPECT_THROW(OverGenerate(g, src, 8, 7, 3), Error);
  EXPECT_THROW(OverGenerate(g, src, 7, 17, 3), Error);
}

}  // namespace
}  // namespace ogsum::decoder
