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
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "ogsum/ogsum.h"

namespace {

namespace fs = std::filesystem;

struct ConfigHandle {
  ogs_config* c = nullptr;
  ConfigHandle() { EXPECT_EQ(ogs_config_new(&c), OGS_OK); }
  ~ConfigHandle() { ogs_config_free(c); }
};

std::string Get(const ogs_config* c, const char* key) {
  size_t needed = 0;
  EXPECT_EQ(ogs_config_get(c, key, nullptr, 0, &needed), OGS_BUFFER_TOO_SMALL);
  std::string buf(needed, '\0');
  EXPECT_EQ(ogs_config_get(c, key, buf.data(), buf.size(), &needed), OGS_OK);
  buf.resize(needed - 1);
  return buf;
}

fs::path Scratch(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() /
                     ("ogsum_capi_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STRNE(ogs_version(), "");
  EXPECT_STREQ(ogs_status_name(OGS_OK), "ok");
  EXPECT_STRNE(ogs_status_name(OGS_BUFFER_TOO_SMALL), ogs_status_name(OGS_IO));
}

TEST(CApiTest, ConfigGetSetAndBufferSizes) {
  ConfigHandle h;
  EXPECT_EQ(Get(h.c, "beam.K"), "20");
  EXPECT_EQ(ogs_config_set(h.c, "beam.K", "5"), OGS_OK);
  EXPECT_EQ(Get(h.c, "beam.K"), "5");
  EXPECT_EQ(ogs_config_override(h.c, "reward.r=3"), OGS_OK);
  EXPECT_EQ(Get(h.c, "reward.r"), "3");

  char small[2];
  size_t needed = 0;
  EXPECT_EQ(ogs_config_get(h.c, "reward.r", small, 1, &needed), OGS_BUFFER_TOO_SMALL);
  EXPECT_EQ(needed, 2u);
  EXPECT_EQ(ogs_config_get(h.c, "reward.r", small, 2, &needed), OGS_OK);
  EXPECT_STREQ(small, "3");

  EXPECT_EQ(ogs_config_snapshot(h.c, nullptr, 0, &needed), OGS_BUFFER_TOO_SMALL);
  std::string snap(needed, '\0');
  EXPECT_EQ(ogs_config_snapshot(h.c, snap.data(), snap.size(), &needed), OGS_OK);
  EXPECT_NE(snap.find("beam.K = 5\n"), std::string::npos);
  EXPECT_EQ(ogs_config_validate(h.c), OGS_OK);
}

TEST(CApiTest, ErrorsCarryStatusAndMessage) {
  ConfigHandle h;
  EXPECT_EQ(ogs_config_set(h.c, "no.such.key", "1"), OGS_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ogs_last_error()).find("no.such.key"), std::string::npos);
  EXPECT_EQ(ogs_config_set(nullptr, "beam.K", "1"), OGS_INVALID_ARGUMENT);
  EXPECT_EQ(ogs_config_set(h.c, "beam.K", "0"), OGS_OK);
  EXPECT_EQ(ogs_config_validate(h.c), OGS_INVALID_ARGUMENT);
  EXPECT_STRNE(ogs_last_error(), "");
  ogs_config* none = nullptr;
  EXPECT_EQ(ogs_config_load("/nonexistent/ogsum.conf", &none), OGS_IO);
  EXPECT_EQ(none, nullptr);
  EXPECT_EQ(ogs_config_new(nullptr), OGS_INVALID_ARGUMENT);
  ConfigHandle ok;
  EXPECT_EQ(ogs_config_set(ok.c, "beam.K", "4"), OGS_OK);
  EXPECT_STREQ(ogs_last_error(), "");
}

TEST(CApiTest, Scorers) {
  double v = 0;
  EXPECT_EQ(ogs_score_length_norm(-10, 10, 1, &v), OGS_OK);
  EXPECT_DOUBLE_EQ(v, -1.0);
  EXPECT_EQ(ogs_score_length_norm(-12, 8, 0.5, &v), OGS_OK);
  EXPECT_NEAR(v, -4.242640687, 1e-9);
  EXPECT_EQ(ogs_score_length_norm(-1, 0, 1, &v), OGS_INVALID_ARGUMENT);
  EXPECT_EQ(ogs_score_length_norm(-1, 2, 1, nullptr), OGS_INVALID_ARGUMENT);
  EXPECT_DOUBLE_EQ(ogs_score_reward(-10, 8, 10, 2), 6.0);
  EXPECT_DOUBLE_EQ(ogs_score_reward(-10, 12, 10, 2), 10.0);
}

TEST(CApiTest, Rouge) {
  ogs_rouge_score s{};
  EXPECT_EQ(ogs_rouge_n("a b c d", "a b x y", 1, &s), OGS_OK);
  EXPECT_DOUBLE_EQ(s.f1, 0.5);
  EXPECT_EQ(ogs_rouge_n("a b c d", "a b x y", 2, &s), OGS_OK);
  EXPECT_DOUBLE_EQ(s.f1, 1.0 / 3.0);
  EXPECT_EQ(ogs_rouge_l("a b c", "a x c", &s), OGS_OK);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);
  EXPECT_EQ(ogs_rouge_n("a", "a", 3, &s), OGS_INVALID_ARGUMENT);
  EXPECT_EQ(ogs_rouge_l(nullptr, "a", &s), OGS_INVALID_ARGUMENT);
}

TEST(CApiTest, SynthCorpusWritesTsv) {
  const fs::path dir = Scratch("synth");
  const std::string path = (dir / "c.tsv").string();
  ASSERT_EQ(ogs_synth_corpus(25, 3, path.c_str()), OGS_OK);
  std::ifstream in(path);
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_NE(line.find('\t'), std::string::npos);
    ++n;
  }
  EXPECT_EQ(n, 25u);
  fs::remove_all(dir);
}

TEST(CApiTest, StagesReportMissingInputs) {
  ConfigHandle h;
  const fs::path dir = Scratch("stage");
  ASSERT_EQ(ogs_config_set(h.c, "out_dir", (dir / "out").c_str()), OGS_OK);
  EXPECT_EQ(ogs_stage_train_generator(h.c), OGS_INVALID_ARGUMENT);
  EXPECT_NE(std::string(ogs_last_error()).find("train"), std::string::npos);
  EXPECT_EQ(ogs_run_pipeline(h.c), OGS_INVALID_ARGUMENT);
  EXPECT_EQ(ogs_stage_select(h.c, "nonsense"), OGS_INVALID_ARGUMENT);
  fs::remove_all(dir);
}

TEST(CApiTest, TrainedGeneratorDecodesThroughHandles) {
  const fs::path dir = Scratch("gen");
  ConfigHandle h;
  const std::string train = std::string(OGSUM_TEST_FIXTURES) + "/memorize8.tsv";
  for (const auto& [k, v] : std::vector<std::pair<std::string, std::string>>{
           {"train", train}, {"out_dir", (dir / "out").string()}, {"model.blocks", "1"},
           {"model.hidden", "16"}, {"model.heads", "2"}, {"model.ffn", "32"},
           {"model.max_src_len", "16"}, {"model.max_tgt_len", "10"}, {"beam.L_max", "10"},
           {"train.steps", "20"}, {"train.batch_size", "4"}, {"train.probe_size", "8"}}) {
    ASSERT_EQ(ogs_config_set(h.c, k.c_str(), v.c_str()), OGS_OK) << k;
  }
  ogs_set_log_quiet(1);
  ASSERT_EQ(ogs_stage_train_generator(h.c), OGS_OK) << ogs_last_error();
  ogs_set_log_quiet(0);

  ogs_vocab* vocab = nullptr;
  ASSERT_EQ(ogs_vocab_load((dir / "out/vocab.txt").c_str(), &vocab), OGS_OK);
  EXPECT_GT(ogs_vocab_size(vocab), 4u);

  size_t count = 0;
  EXPECT_EQ(ogs_vocab_encode(vocab, "the cat", nullptr, 0, &count), OGS_BUFFER_TOO_SMALL);
  EXPECT_EQ(count, 2u);
  std::vector<int32_t> ids(count);
  ASSERT_EQ(ogs_vocab_encode(vocab, "the cat", ids.data(), ids.size(), &count), OGS_OK);
  size_t needed = 0;
  EXPECT_EQ(ogs_vocab_decode(vocab, ids.data(), ids.size(), nullptr, 0, &needed),
            OGS_BUFFER_TOO_SMALL);
  std::string text(needed, '\0');
  ASSERT_EQ(ogs_vocab_decode(vocab, ids.data(), ids.size(), text.data(), text.size(), &needed),
            OGS_OK);
  const int32_t bad = 1 << 30;
  EXPECT_EQ(ogs_vocab_decode(vocab, &bad, 1, text.data(), text.size(), &needed),
            OGS_OUT_OF_RANGE);

  ogs_generator* gen = nullptr;
  ASSERT_EQ(ogs_generator_load((dir / "out/generator.ckpt").c_str(), vocab, &gen), OGS_OK);
  ogs_vocab_free(vocab);
  EXPECT_EQ(ogs_generator_max_length(gen), 10u);

  std::vector<int32_t> tokens(5), order(5);
  double score = 1.0;
  ASSERT_EQ(ogs_generator_decode(gen, "the cat sat on the mat .", 5, 3, tokens.data(),
                                 order.data(), &score),
            OGS_OK);
  EXPECT_LE(score, 0.0);
  EXPECT_EQ(std::set<int32_t>(order.begin(), order.end()), (std::set<int32_t>{1, 2, 3, 4, 5}));
  for (int32_t t : tokens) EXPECT_GE(t, 4);
  EXPECT_EQ(ogs_generator_decode(gen, "the cat .", 11, 3, tokens.data(), order.data(), &score),
            OGS_OUT_OF_RANGE);
  EXPECT_EQ(ogs_generator_decode(gen, "", 3, 3, tokens.data(), order.data(), &score),
            OGS_INVALID_ARGUMENT);

  size_t len = 99;
  int truncated = -1;
  ASSERT_EQ(ogs_generator_predict_length(gen, "the cat sat .", &len, &truncated), OGS_OK);
  EXPECT_LE(len, 10u);
  EXPECT_TRUE(truncated == 0 || truncated == 1);
  ogs_generator_free(gen);

  ogs_selector* sel = nullptr;
  EXPECT_NE(ogs_selector_load((dir / "missing.ckpt").c_str(), &sel), OGS_OK);
  EXPECT_EQ(sel, nullptr);
  fs::remove_all(dir);
}

int g_calls = 0;
void CountLog(int, const char*, void* user) {
  ++g_calls;
  *static_cast<int*>(user) += 1;
}

TEST(CApiTest, LogCallbackReceivesMessages) {
  int seen = 0;
  ogs_set_log_callback(CountLog, &seen);
  const fs::path dir = Scratch("log");
  ConfigHandle h;
  const std::string train = std::string(OGSUM_TEST_FIXTURES) + "/memorize8.tsv";
  ogs_config_set(h.c, "train", train.c_str());
  ogs_config_set(h.c, "out_dir", (dir / "out").c_str());
  ogs_config_set(h.c, "model.blocks", "1");
  ogs_config_set(h.c, "model.hidden", "8");
  ogs_config_set(h.c, "model.heads", "2");
  ogs_config_set(h.c, "model.ffn", "8");
  ogs_config_set(h.c, "train.steps", "2");
  ogs_config_set(h.c, "train.probe_size", "4");
  EXPECT_EQ(ogs_stage_train_generator(h.c), OGS_OK) << ogs_last_error();
  ogs_set_log_callback(nullptr, nullptr);
  EXPECT_GT(seen, 0);
  EXPECT_EQ(seen, g_calls);
  fs::remove_all(dir);
}

}  // namespace
