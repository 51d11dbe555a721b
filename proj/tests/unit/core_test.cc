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

#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "core/error.h"
#include "core/random.h"
#include "core/sequence.h"
#include "core/vocab.h"
#include "test_support.h"

namespace ogsum {
namespace {

Vocabulary AbcVocab() {
  const std::vector<std::string> corpus = {"a b", "a c"};
  return Vocabulary::Build(corpus, 1);
}

TEST(VocabularyTest, BuildEnumeratesDistinctTokens) {
  const Vocabulary v = AbcVocab();
  EXPECT_EQ(v.size(), 7u);
  const std::vector<std::string> want = {"[MASK]", "[SEP]", "[PAD]", "[UNK]",
                                         "a", "b", "c"};
  ASSERT_EQ(v.tokens().size(), want.size());
  for (size_t i = 4; i < want.size(); ++i) EXPECT_EQ(v.tokens()[i], want[i]);
}

TEST(VocabularyTest, SpecialsAreDistinctAndFirst) {
  const Vocabulary v = AbcVocab();
  std::set<TokenId> ids = {Vocabulary::kMask, Vocabulary::kSep, Vocabulary::kPad,
                           Vocabulary::kUnk};
  EXPECT_EQ(ids.size(), 4u);
  for (TokenId id : ids) {
    EXPECT_LT(static_cast<size_t>(id), v.size());
    EXPECT_TRUE(Vocabulary::IsSpecial(id));
    EXPECT_EQ(v.Id(v.Token(id)), id);
  }
}

TEST(VocabularyTest, MinCountThresholdSendsRareTokensToUnk) {
  const std::vector<std::string> corpus = {"a b", "a c"};
  const Vocabulary v = Vocabulary::Build(corpus, 2);
  EXPECT_EQ(v.size(), 5u);
  EXPECT_TRUE(v.Contains("a"));
  EXPECT_FALSE(v.Contains("b"));
  const TokenSeq ids = v.Encode("a b c");
  EXPECT_EQ(ids, (TokenSeq{v.Id("a"), Vocabulary::kUnk, Vocabulary::kUnk}));
}

TEST(VocabularyTest, EmptyCorpusIsRejected) {
  const std::vector<std::string> blank = {"", "   ", "\t"};
  try {
    Vocabulary::Build(blank, 1);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty corpus");
  }
}

TEST(VocabularyTest, FrequencyThenLexicographicOrder) {
  const std::vector<std::string> corpus = {"z y y", "x x y", "w"};
  const Vocabulary v = Vocabulary::Build(corpus, 1);
  const std::vector<std::string> content(v.tokens().begin() + 4, v.tokens().end());
  EXPECT_EQ(content, (std::vector<std::string>{"y", "x", "w", "z"}));
}

TEST(VocabularyTest, BuildIsDeterministic) {
  const std::vector<std::string> corpus = {"d c b a", "b b c", "e a"};
  EXPECT_EQ(Vocabulary::Build(corpus, 1), Vocabulary::Build(corpus, 1));
}

TEST(VocabularyTest, EncodeMapsUnknownToUnk) {
  const Vocabulary v = AbcVocab();
  EXPECT_EQ(v.Encode("a b"), (TokenSeq{v.Id("a"), v.Id("b")}));
  EXPECT_EQ(v.Encode("a zzz"), (TokenSeq{v.Id("a"), Vocabulary::kUnk}));
}

TEST(VocabularyTest, RoundTripOnInVocabularyText) {
  const Vocabulary v = AbcVocab();
  EXPECT_EQ(v.Decode(v.Encode("a b c")), "a b c");
  EXPECT_EQ(v.Decode(v.Encode("  c   a\tb ")), "c a b");
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> words;
    const auto n = rng.Between(1, 9);
    for (int64_t i = 0; i < n; ++i) words.push_back(v.Token(static_cast<TokenId>(rng.Between(4, 6))));
    const std::string text = JoinWords(words);
    EXPECT_EQ(v.Decode(v.Encode(text)), text);
  }
}

TEST(VocabularyTest, DecodeCases) {
  const Vocabulary v = AbcVocab();
  EXPECT_EQ(v.Decode(TokenSeq{v.Id("a"), v.Id("b")}), "a b");
  EXPECT_EQ(v.Decode(TokenSeq{}), "");
  EXPECT_EQ(v.Decode(TokenSeq{Vocabulary::kMask, Vocabulary::kSep}), "[MASK] [SEP]");
  const TokenSeq bad = {static_cast<TokenId>(v.size())};
  try {
    v.Decode(bad);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("id out of range"), std::string::npos);
  }
}

TEST(VocabularyTest, SaveLoadRoundTrip) {
  testing::ScratchDir dir("vocab");
  const Vocabulary v = AbcVocab();
  v.Save(dir.file("v.txt"));
  EXPECT_EQ(Vocabulary::Load(dir.file("v.txt")), v);
}

TEST(VocabularyTest, FromTokensRequiresSpecials) {
  EXPECT_THROW(Vocabulary::FromTokens({"a", "b", "c", "d", "e"}), Error);
  EXPECT_THROW(Vocabulary::FromTokens({"[MASK]", "[SEP]", "[PAD]", "[UNK]"}), Error);
  EXPECT_THROW(
      Vocabulary::FromTokens({"[MASK]", "[SEP]", "[PAD]", "[UNK]", "a", "a"}), Error);
}

TEST(PartialSummaryTest, FillRecordsSteps) {
  PartialSummary p(3);
  EXPECT_EQ(p.filled_count(), 0u);
  EXPECT_FALSE(p.complete());
  p.Fill(2, 7);
  p.Fill(0, 5);
  EXPECT_EQ(p.step(2), 1);
  EXPECT_EQ(p.step(0), 2);
  EXPECT_EQ(p.step(1), 0);
  EXPECT_EQ(p.token(1), Vocabulary::kMask);
  EXPECT_TRUE(p.StepsFormPrefix());
  p.Fill(1, 6);
  EXPECT_TRUE(p.complete());
  EXPECT_TRUE(IsPermutationOfSteps(p.steps()));
  EXPECT_EQ(SlotsInFillOrder(p.steps()), (std::vector<size_t>{2, 0, 1}));
}

TEST(PartialSummaryTest, RejectsOverwriteOutOfRangeAndMask) {
  PartialSummary p(2);
  p.Fill(0, 5);
  EXPECT_THROW(p.Fill(0, 6), Error);
  EXPECT_THROW(p.Fill(2, 6), Error);
  EXPECT_THROW(p.Fill(1, Vocabulary::kMask), Error);
  EXPECT_EQ(p.token(0), 5);
  EXPECT_EQ(p.filled_count(), 1u);
}

TEST(PartialSummaryTest, StepsStayAPrefixUnderRandomFills) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t len = static_cast<size_t>(rng.Between(1, 12));
    std::vector<size_t> slots(len);
    for (size_t i = 0; i < len; ++i) slots[i] = i;
    rng.Shuffle(slots);
    PartialSummary p(len);
    for (size_t i = 0; i < len; ++i) {
      p.Fill(slots[i], static_cast<TokenId>(rng.Between(1, 9)));
      ASSERT_TRUE(p.StepsFormPrefix());
      ASSERT_EQ(p.filled_count(), i + 1);
    }
    EXPECT_EQ(SlotsInFillOrder(p.steps()), slots);
  }
}

TEST(SequenceTest, PermutationCheck) {
  EXPECT_TRUE(IsPermutationOfSteps(std::vector<int>{2, 3, 1}));
  EXPECT_FALSE(IsPermutationOfSteps(std::vector<int>{1, 1, 2}));
  EXPECT_FALSE(IsPermutationOfSteps(std::vector<int>{0, 1, 2}));
  EXPECT_FALSE(IsPermutationOfSteps(std::vector<int>{1, 2, 4}));
  EXPECT_THROW(SlotsInFillOrder(std::vector<int>{1, 1}), Error);
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.NextU64(), b.NextU64());
  EXPECT_NE(Rng::Derive(1, 2), Rng::Derive(1, 3));
  EXPECT_NE(Rng::Derive(1, 2), Rng::Derive(2, 2));
}

TEST(RngTest, BelowStaysInRange) {
  Rng r(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[r.Below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

}  // namespace
}  // namespace ogsum
