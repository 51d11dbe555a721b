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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string output;
};

CliRun Cli(const std::string& args) {
  const std::string cmd = std::string("'") + OGSUM_CLI + "' " + args + " 2>&1";
  CliRun r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) r.output += buf;
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ogsum_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, VersionAndHelp) {
  const CliRun v = Cli("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_FALSE(v.output.empty());
  const CliRun h = Cli("--help");
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.output.find("synth-corpus"), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(Cli("").code, 1);
  EXPECT_EQ(Cli("frobnicate").code, 1);
  EXPECT_EQ(Cli("select --mode best").code, 1);
  EXPECT_EQ(Cli("generate --lengths 7-16").code, 1);
  EXPECT_EQ(Cli("train-generator --set no.such=1").code, 1);
  EXPECT_EQ(Cli("train-generator --config " + Path("absent.conf")).code, 1);
}

TEST_F(CliTest, MissingInputExitsOneAndNamesIt) {
  const CliRun r = Cli("train-generator --set train=" + Path("absent.tsv") + " --set out_dir=" +
                    Path("out"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("absent.tsv"), std::string::npos);
  EXPECT_FALSE(fs::exists(Path("out")));
}

TEST_F(CliTest, SynthCorpusWritesFile) {
  const CliRun r = Cli("synth-corpus -n 30 --seed 2 -o " + Path("c.tsv"));
  ASSERT_EQ(r.code, 0) << r.output;
  std::ifstream in(Path("c.tsv"));
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 30u);
}

TEST_F(CliTest, StageFailureExitsTwo) {
  {
    std::ofstream bad(Path("bad.tsv"));
    bad << "only one field\n";
  }
  const CliRun r = Cli("-q train-generator --set train=" + Path("bad.tsv") + " --set out_dir=" +
                    Path("out"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("line 1"), std::string::npos);
}

TEST_F(CliTest, ConfigFileAndOverridesRunAStage) {
  {
    std::ofstream conf(Path("run.conf"));
    conf << "train = " << OGSUM_TEST_FIXTURES << "/memorize8.tsv\n"
         << "model.blocks = 1\nmodel.hidden = 8\nmodel.heads = 2\nmodel.ffn = 8\n"
         << "train.steps = 100\ntrain.probe_size = 4\n";
  }
  const CliRun r = Cli("-q train-generator -c " + Path("run.conf") + " --set train.steps=3 --set out_dir=" +
                    Path("out"));
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_TRUE(fs::exists(Path("out/generator.ckpt")));
  EXPECT_TRUE(fs::exists(Path("out/vocab.txt")));
  std::ifstream log(Path("out/train_generator.log"));
  std::string text((std::istreambuf_iterator<char>(log)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text.rfind("epoch\tend_step\tmean_loss\n", 0), 0u) << text;
  EXPECT_NE(text.find("\t3\t"), std::string::npos) << text;
  EXPECT_NE(text.find("# probe_final\t"), std::string::npos) << text;
}

}  // namespace
