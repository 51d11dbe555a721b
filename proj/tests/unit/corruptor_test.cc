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

#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "core/error.h"
#include "core/log.h"
#include "core/random.h"
#include "core/vocab.h"
#include "corruptor/bigram_index.h"
#include "corruptor/corruptions.h"
#include "corruptor/dataset.h"
#include "corruption_oracle.h"
#include "pipeline/synth_corpus.h"
#include "test_support.h"

namespace ogsum::corruptor {
namespace {

using ogsum::testing::CheckCorruption;
using ogsum::testing::Words;

TEST(EntityTest, SentenceInitialRunNeedsAnAcronym) {
  using Spans = std::vector<std::pair<size_t, size_t>>;
  const auto w1 = SplitWords("German experts identify last known portrait of Mozart");
  EXPECT_EQ(EntitySpans(w1), (Spans{{7, 8}}));
  const auto w2 = SplitWords("UN extends mandate");
  EXPECT_EQ(EntitySpans(w2), (Spans{{0, 1}}));
  const auto w3 = SplitWords("talks with West Bank leaders resume in New York");
  EXPECT_EQ(EntitySpans(w3), (Spans{{2, 4}, {7, 9}}));
}

TEST(EntityTest, ReplacesTheOnlyEntityWithThePoolEntry) {
  Rng rng(1);
  const std::vector<std::string> pool = {"Mount Mayon's"};
  EXPECT_EQ(EntityReplace("German experts identify last known portrait of Mozart", pool, rng),
            "German experts identify last known portrait of Mount Mayon's");
  const std::vector<std::string> nato = {"NATO"};
  EXPECT_EQ(EntityReplace("UN extends mandate", nato, rng), "NATO extends mandate");
}

TEST(EntityTest, SkipsWithoutEntitiesAndRejectsEmptyPool) {
  Rng rng(2);
  const std::vector<std::string> pool = {"NATO"};
  EXPECT_EQ(EntityReplace("Police arrest protesters in the capital", pool, rng), std::nullopt);
  EXPECT_EQ(EntityReplace("NATO extends mandate", pool, rng), std::nullopt);
  EXPECT_THROW(EntityReplace("UN extends mandate", std::vector<std::string>{}, rng), Error);
}

TEST(EntityTest, HarvestCollectsDistinctSpans) {
  const std::vector<std::string> s = {"UN extends mandate in Georgia",
                                      "Rice meets UN envoy", "talks in Georgia stall"};
  EXPECT_EQ(HarvestEntities(s), (std::vector<std::string>{"Georgia", "UN"}));
}

TEST(NegationTest, TogglesFirstAuxiliary) {
  EXPECT_EQ(Negate("Rice suggests IAEA chief should stay clear of diplomacy"),
            "Rice suggests IAEA chief shouldn't stay clear of diplomacy");
  EXPECT_EQ(Negate("market is calm"), "market isn't calm");
  EXPECT_EQ(Negate("market isn't calm"), "market is calm");
  EXPECT_EQ(Negate("talks will resume and can succeed"), "talks won't resume and can succeed");
  EXPECT_EQ(Negate("rebels can't hold city"), "rebels can hold city");
  EXPECT_EQ(Negate("Will talks resume"), "Won't talks resume");
  EXPECT_EQ(Negate("police arrest protesters"), std::nullopt);
}

TEST(IncompleteTest, ProducesShortInteriorSpans) {
  const std::string s = "HK Bank Deposits Increase in March";
  std::set<std::string> seen;
  for (uint64_t seed = 0; seed < 400; ++seed) {
    Rng rng(seed);
    const auto out = TruncateIncomplete(s, rng);
    ASSERT_TRUE(out.has_value());
    EXPECT_EQ(CheckCorruption(CorruptionKind::kIncomplete, s, *out, {}), "") << *out;
    seen.insert(*out);
  }
  EXPECT_TRUE(seen.count("Increase in March"));
  EXPECT_FALSE(seen.count("HK Bank Deposits"));
  Rng rng(1);
  EXPECT_EQ(TruncateIncomplete("four word summary here", rng), std::nullopt);
  EXPECT_EQ(TruncateIncomplete("exactly five words right here", rng), std::nullopt);
}

TEST(BigramTest, DistinctBigramsAndSharedCounts) {
  EXPECT_EQ(DistinctBigrams("a b a b"), (std::vector<std::string>{"a b", "b a"}));
  const std::vector<std::string> s = {"a b c d e", "a b c d e", "x a b c y", "p q r"};
  const BigramIndex index(s);
  EXPECT_EQ(index.size(), 4u);
  EXPECT_EQ(index.SharedCount(0, 1), 4u);
  EXPECT_EQ(index.SharedCount(0, 2), 2u);
  EXPECT_EQ(index.Candidates(0, 4), (std::vector<size_t>{1}));
  EXPECT_EQ(index.Candidates(0, 2), (std::vector<size_t>{1, 2}));
  EXPECT_TRUE(index.Candidates(3, 1).empty());
  const BigramIndex again(s);
  for (size_t i = 0; i < s.size(); ++i) EXPECT_EQ(again.bigrams(i), index.bigrams(i));
}

TEST(SearchReplaceTest, IdenticalCopyQualifiesAndDisjointSkips) {
  Rng rng(3);
  const std::vector<std::string> twins = {"council extends mandate of mission",
                                          "council extends mandate of mission"};
  const BigramIndex ti(twins);
  EXPECT_EQ(SearchReplace(0, ti, rng), twins[1]);
  const std::vector<std::string> disjoint = {"a b c d e", "f g h i j", "k l m n o"};
  const BigramIndex di(disjoint);
  for (size_t id = 0; id < disjoint.size(); ++id) EXPECT_EQ(SearchReplace(id, di, rng), std::nullopt);
}

TEST(SearchReplaceTest, PicksAmongQualifyingCandidatesOnly) {
  const std::vector<std::string> s = {
      "Israel surges ahead with West Bank barrier construction",
      "Soul-searching in Israel over shooting of West Bank barrier protestor",
      "Israel surges ahead with West Bank barrier plan",
      "Israel surges ahead with West Bank road"};
  const BigramIndex index(s);
  // The two headlines share only "West Bank" and "Bank barrier".
  EXPECT_EQ(index.SharedCount(0, 1), 2u);
  std::set<std::string> seen;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const auto out = SearchReplace(0, index, rng);
    ASSERT_TRUE(out.has_value());
    seen.insert(*out);
  }
  EXPECT_EQ(seen, (std::set<std::string>{s[2], s[3]}));
}

TEST(SwapTest, FloorSplit) {
  EXPECT_EQ(SwapSegments("a b c d"), "c d a b");
  EXPECT_EQ(SwapSegments("a b c"), "b c a");
  EXPECT_EQ(SwapSegments("a b"), "b a");
  EXPECT_EQ(SwapSegments("single"), std::nullopt);
}

TEST(SwapTest, NineWordHeadlineSplitsAfterFourWords) {
  const std::string s = "Security Council extends mandate of UN mission in Georgia";
  const auto out = SwapSegments(s);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(*out, "of UN mission in Georgia Security Council extends mandate");
  EXPECT_EQ(CheckCorruption(CorruptionKind::kSwapSegments, s, *out, {}), "");
  // A ceiling split gives the other arrangement; both are permutations.
  const std::string ceil_split = "UN mission in Georgia Security Council extends mandate of";
  EXPECT_EQ(CheckCorruption(CorruptionKind::kSwapSegments, s, ceil_split, {}), "");
}

TEST(QuotaTest, LargestRemainderSumsExactly) {
  EXPECT_EQ(ProportionalQuotas(18260, kNegativeWeights),
            (std::vector<size_t>{2260, 4000, 4000, 4000, 4000}));
  EXPECT_EQ(ProportionalQuotas(10000, kNegativeWeights),
            (std::vector<size_t>{1238, 2191, 2191, 2190, 2190}));
  const auto one = ProportionalQuotas(1, kNegativeWeights);
  EXPECT_EQ(std::accumulate(one.begin(), one.end(), size_t{0}), 1u);
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t total = rng.Below(50000);
    const auto q = ProportionalQuotas(total, kNegativeWeights);
    EXPECT_EQ(std::accumulate(q.begin(), q.end(), size_t{0}), total);
    for (size_t k = 0; k < q.size(); ++k) {
      const double exact = static_cast<double>(total) * kNegativeWeights[k] / 1826.0;
      EXPECT_LT(std::abs(static_cast<double>(q[k]) - exact), 1.0);
    }
  }
}

TEST(KindTest, NamesRoundTrip) {
  for (int k = 0; k < 6; ++k) {
    const auto kind = static_cast<CorruptionKind>(k);
    EXPECT_EQ(KindFromName(KindName(kind)), kind);
  }
  EXPECT_THROW(KindFromName("paraphrase"), Error);
}

class DatasetTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { train_ = new std::vector<SummaryPair>(pipeline::SynthCorpus(600, 21)); }
  static void TearDownTestSuite() { delete train_; }
  static std::vector<SummaryPair>* train_;
};
std::vector<SummaryPair>* DatasetTest::train_ = nullptr;

TEST_F(DatasetTest, ScaledProportionsAndBalance) {
  const auto data = BuildSelectorDataset(*train_, 36520, 4);
  ASSERT_EQ(data.size(), 36520u);
  std::map<CorruptionKind, size_t> counts;
  for (const auto& d : data) ++counts[d.kind];
  EXPECT_EQ(counts[CorruptionKind::kOriginal], 18260u);
  EXPECT_EQ(counts[CorruptionKind::kSearchReplace], 2260u);
  EXPECT_EQ(counts[CorruptionKind::kEntityReplacement], 4000u);
  EXPECT_EQ(counts[CorruptionKind::kNegation], 4000u);
  EXPECT_EQ(counts[CorruptionKind::kIncomplete], 4000u);
  EXPECT_EQ(counts[CorruptionKind::kSwapSegments], 4000u);
}

TEST_F(DatasetTest, EveryNegativeSatisfiesItsPredicate) {
  const auto data = BuildSelectorDataset(*train_, 6000, 5);
  std::map<std::string, std::vector<std::string>> truths;
  std::set<std::string> summaries;
  for (const auto& p : *train_) {
    truths[p.source].push_back(p.summary);
    summaries.insert(p.summary);
  }
  size_t pos = 0, neg = 0;
  for (const auto& d : data) {
    ASSERT_EQ(d.admissible, d.kind == CorruptionKind::kOriginal);
    ASSERT_TRUE(truths.count(d.source));
    const auto& cands = truths[d.source];
    if (d.admissible) {
      ++pos;
      EXPECT_NE(std::find(cands.begin(), cands.end(), d.summary), cands.end());
      continue;
    }
    ++neg;
    std::string why = "no ground truth";
    for (const auto& t : cands) {
      why = CheckCorruption(d.kind, t, d.summary, summaries);
      if (why.empty()) break;
    }
    EXPECT_EQ(why, "") << KindName(d.kind) << ": " << d.summary;
  }
  EXPECT_EQ(pos, neg);
}

TEST_F(DatasetTest, MinimalDeterministicAndShuffled) {
  const auto two = BuildSelectorDataset(*train_, 2, 1);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_NE(two[0].admissible, two[1].admissible);
  const auto a = BuildSelectorDataset(*train_, 400, 9);
  const auto b = BuildSelectorDataset(*train_, 400, 9);
  EXPECT_EQ(a, b);
  const auto c = BuildSelectorDataset(*train_, 400, 10);
  EXPECT_NE(a, c);
  size_t leading_pos = 0;
  while (leading_pos < a.size() && a[leading_pos].admissible) ++leading_pos;
  EXPECT_LT(leading_pos, 50u);
  EXPECT_THROW(BuildSelectorDataset(*train_, 3, 1), Error);
  EXPECT_THROW(BuildSelectorDataset(std::vector<SummaryPair>{}, 4, 1), Error);
}

TEST(DatasetExhaustionTest, InapplicableKindsAreReassigned) {
  std::vector<SummaryPair> train;
  for (int i = 0; i < 30; ++i) {
    const std::string s = "police arrest protesters near the old market square " + std::to_string(i);
    train.push_back({"reports say " + s + " .", s});
  }
  std::vector<std::string> warnings;
  SetLogSink([&](LogLevel level, const std::string& msg) {
    if (level == LogLevel::kWarning) warnings.push_back(msg);
  });
  const auto data = BuildSelectorDataset(train, 200, 2);
  SetLogSink(DefaultLogSink());
  ASSERT_EQ(data.size(), 200u);
  std::map<CorruptionKind, size_t> counts;
  for (const auto& d : data) ++counts[d.kind];
  EXPECT_EQ(counts[CorruptionKind::kOriginal], 100u);
  EXPECT_EQ(counts[CorruptionKind::kEntityReplacement], 0u);
  EXPECT_EQ(counts[CorruptionKind::kNegation], 0u);
  EXPECT_GT(counts[CorruptionKind::kIncomplete], 0u);
  EXPECT_GT(counts[CorruptionKind::kSwapSegments], 0u);
  EXPECT_FALSE(warnings.empty());
}

TEST(DatasetTsvTest, RoundTrip) {
  ogsum::testing::ScratchDir dir("ds");
  const std::vector<CorruptionInstance> d = {
      {"src one .", "sum one", true, CorruptionKind::kOriginal},
      {"src two .", "two sum", false, CorruptionKind::kSwapSegments}};
  WriteDatasetTsv(dir.file("d.tsv"), d);
  EXPECT_EQ(ReadDatasetTsv(dir.file("d.tsv")), d);
}

}  // namespace
}  // namespace ogsum::corruptor
