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

// ogsum command-line driver. Exit status: 0 success, 1 usage or
// configuration error, 2 stage failure.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ogsum/ogsum.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitStage = 2;

struct Common {
  std::string config;
  std::vector<std::string> sets;
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("-c,--config", c.config, "Config file (key = value lines)")
      ->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", c.sets, "Override a setting, key=value (repeatable)");
}

int Report(ogs_status st) {
  if (st == OGS_OK) return 0;
  std::fprintf(stderr, "ogsum: %s: %s\n", ogs_status_name(st), ogs_last_error());
  return st == OGS_INVALID_ARGUMENT ? kExitUsage : kExitStage;
}

// Loads the config file (if any), then applies extra and --set overrides in
// that order so --set wins.
ogs_config* MakeConfig(const Common& c, const std::vector<std::string>& extra, int* exit_code) {
  ogs_config* cfg = nullptr;
  ogs_status st = c.config.empty() ? ogs_config_new(&cfg) : ogs_config_load(c.config.c_str(), &cfg);
  if (st != OGS_OK) {
    Report(st);
    *exit_code = kExitUsage;
    return nullptr;
  }
  std::vector<std::string> all = extra;
  all.insert(all.end(), c.sets.begin(), c.sets.end());
  for (const auto& a : all) {
    st = ogs_config_override(cfg, a.c_str());
    if (st != OGS_OK) {
      Report(st);
      *exit_code = kExitUsage;
      ogs_config_free(cfg);
      return nullptr;
    }
  }
  st = ogs_config_validate(cfg);
  if (st != OGS_OK) {
    Report(st);
    *exit_code = kExitUsage;
    ogs_config_free(cfg);
    return nullptr;
  }
  return cfg;
}

template <typename Fn>
int RunWithConfig(const Common& c, const std::vector<std::string>& extra, Fn fn) {
  int code = 0;
  ogs_config* cfg = MakeConfig(c, extra, &code);
  if (!cfg) return code;
  const int rc = Report(fn(cfg));
  ogs_config_free(cfg);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ogsum: over-generate fixed-length summaries, then select"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ogs_version()));
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress progress logging");

  Common train_c, gen_c, corrupt_c, selt_c, sel_c, eval_c, pipe_c;
  auto* train = app.add_subcommand("train-generator", "Train the denoising generator");
  AddCommon(train, train_c);

  auto* gen = app.add_subcommand("generate", "Decode one summary per length for the test split");
  AddCommon(gen, gen_c);
  std::string lengths = "7..16";
  size_t beam = 20;
  gen->add_option("--lengths", lengths, "Length range A..B")->capture_default_str();
  gen->add_option("--beam", beam, "Beam size K")->capture_default_str();

  auto* corrupt = app.add_subcommand("build-corruptions", "Build the selector training set");
  AddCommon(corrupt, corrupt_c);

  auto* selt = app.add_subcommand("train-selector", "Train the quality classifier");
  AddCommon(selt, selt_c);

  auto* sel = app.add_subcommand("select", "Pick one hypothesis per instance");
  AddCommon(sel, sel_c);
  std::vector<std::string> modes;
  sel->add_option("--mode", modes, "quality, length, lennorm or average (repeatable; default all)")
      ->check(CLI::IsMember({"quality", "length", "lennorm", "average"}));

  auto* ev = app.add_subcommand("evaluate", "Write the per-length ROUGE report");
  AddCommon(ev, eval_c);

  auto* synth = app.add_subcommand("synth-corpus", "Write a synthetic TSV corpus");
  size_t n = 1000;
  uint64_t seed = 1;
  std::string out;
  synth->add_option("-n,--n", n, "Number of pairs")->capture_default_str();
  synth->add_option("--seed", seed, "Random seed")->capture_default_str();
  synth->add_option("-o,--out", out, "Output TSV path")->required();

  auto* pipe = app.add_subcommand("pipeline", "Run every stage and write the manifest");
  AddCommon(pipe, pipe_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }
  if (quiet) ogs_set_log_quiet(1);

  if (train->parsed()) return RunWithConfig(train_c, {}, ogs_stage_train_generator);
  if (gen->parsed()) {
    const auto dots = lengths.find("..");
    if (dots == std::string::npos) {
      std::fprintf(stderr, "ogsum: --lengths expects A..B\n");
      return kExitUsage;
    }
    const std::vector<std::string> extra = {"beam.L_min=" + lengths.substr(0, dots),
                                            "beam.L_max=" + lengths.substr(dots + 2),
                                            "beam.K=" + std::to_string(beam)};
    return RunWithConfig(gen_c, extra, ogs_stage_generate);
  }
  if (corrupt->parsed()) return RunWithConfig(corrupt_c, {}, ogs_stage_build_corruptions);
  if (selt->parsed()) return RunWithConfig(selt_c, {}, ogs_stage_train_selector);
  if (sel->parsed()) {
    std::string joined;
    for (const auto& m : modes) joined += (joined.empty() ? "" : ",") + m;
    return RunWithConfig(sel_c, {}, [&](ogs_config* cfg) {
      return ogs_stage_select(cfg, joined.c_str());
    });
  }
  if (ev->parsed()) return RunWithConfig(eval_c, {}, ogs_stage_evaluate);
  if (synth->parsed()) return Report(ogs_synth_corpus(n, seed, out.c_str()));
  if (pipe->parsed()) {
    int code = 0;
    ogs_config* cfg = MakeConfig(pipe_c, {}, &code);
    if (!cfg) return code;
    const ogs_status st = ogs_run_pipeline(cfg);
    ogs_config_free(cfg);
    if (st == OGS_INVALID_ARGUMENT) return Report(st);
    if (st != OGS_OK) {
      Report(st);
      return kExitStage;
    }
    return 0;
  }
  return kExitUsage;
}
