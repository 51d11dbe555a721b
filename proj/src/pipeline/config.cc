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

#include "pipeline/config.h"

#include <filesystem>
#include <sstream>

#include "core/error.h"
#include "core/random.h"
#include "pipeline/io.h"

namespace ogsum::pipeline {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& Config::Defaults() {
  static const std::vector<std::pair<std::string, std::string>> defaults = {
      {"train", ""},
      {"valid", ""},
      {"test", ""},
      {"out_dir", "out"},
      {"seed", "1"},
      {"vocab.min_count", "1"},
      {"model.blocks", "2"},
      {"model.hidden", "64"},
      {"model.heads", "4"},
      {"model.ffn", "256"},
      {"model.max_src_len", "40"},
      {"model.max_tgt_len", "20"},
      {"train.steps", "3000"},
      {"train.batch_size", "16"},
      {"train.lr", "0.0001"},
      {"train.beta1", "0.9"},
      {"train.beta2", "0.999"},
      {"train.weight_decay", "0.01"},
      {"train.clip_norm", "1.0"},
      {"train.warmup_fraction", "0.05"},
      {"train.sep_padded_fraction", "0.25"},
      {"train.probe_size", "128"},
      {"sched.src_start", "0.10"},
      {"sched.src_end", "0.00"},
      {"sched.tgt_start", "0.90"},
      {"sched.tgt_end", "0.60"},
      {"sched.replace_mask", "0.80"},
      {"sched.replace_random", "0.10"},
      {"sched.replace_keep", "0.10"},
      {"beam.K", "20"},
      {"beam.L_min", "7"},
      {"beam.L_max", "16"},
      {"generate.limit", "200"},
      {"reward.r", "2.0"},
      {"reward.p", "1.0"},
      {"corrupt.n", "20000"},
      {"selector.heldout_n", "2000"},
      {"selector.blocks", "1"},
      {"selector.hidden", "32"},
      {"selector.heads", "2"},
      {"selector.ffn", "128"},
      {"selector.max_len", "48"},
      {"selector.epochs", "4"},
      {"selector.batch_size", "32"},
      {"selector.lr", "0.001"},
  };
  return defaults;
}

bool Config::IsPathKey(const std::string& key) {
  return key == "train" || key == "valid" || key == "test" || key == "out_dir";
}

Config::Config() {
  for (const auto& [k, v] : Defaults()) values_[k] = v;
}

Config Config::Parse(const std::string& text, const std::string& base_dir) {
  Config c;
  std::istringstream is(text);
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kFormat,
                  "config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = Trim(line.substr(0, eq));
    std::string value = Trim(line.substr(eq + 1));
    if (IsPathKey(key) && !value.empty() && !base_dir.empty() &&
        std::filesystem::path(value).is_relative()) {
      value = (std::filesystem::path(base_dir) / value).lexically_normal().string();
    }
    c.Set(key, value);
  }
  return c;
}

Config Config::Load(const std::string& path) {
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return Parse(ReadFile(path), dir.empty() ? "." : dir);
}

void Config::Set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  }
  it->second = value;
}

void Config::Override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "override '" + assignment + "' is not key=value");
  }
  Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

const std::string& Config::Get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
  }
  return it->second;
}

int64_t Config::GetInt(const std::string& key) const {
  const std::string& v = Get(key);
  try {
    size_t used = 0;
    const int64_t out = std::stoll(v, &used);
    if (used == v.size()) return out;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, key + ": expected an integer, got '" + v + "'");
}

double Config::GetDouble(const std::string& key) const {
  const std::string& v = Get(key);
  try {
    size_t used = 0;
    const double out = std::stod(v, &used);
    if (used == v.size()) return out;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::kInvalidArgument, key + ": expected a number, got '" + v + "'");
}

std::string Config::Snapshot() const {
  std::string out;
  for (const auto& [k, v] : values_) {
    if (k == "out_dir") continue;
    out += k + " = " + v + "\n";
  }
  return out;
}

uint64_t PipelineConfig::StageSeed(uint64_t stage) const {
  return Rng::Derive(seed, stage);
}

PipelineConfig Resolve(const Config& c) {
  auto count = [&](const std::string& key, int64_t min) {
    const int64_t v = c.GetInt(key);
    if (v < min) {
      throw Error(ErrorCode::kInvalidArgument,
                  key + " must be >= " + std::to_string(min));
    }
    return static_cast<size_t>(v);
  };
  auto fraction = [&](const std::string& key) {
    const double v = c.GetDouble(key);
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, key + " must lie in [0, 1]");
    }
    return v;
  };
  PipelineConfig p;
  p.train = c.Get("train");
  p.valid = c.Get("valid");
  p.test = c.Get("test");
  p.out_dir = c.Get("out_dir");
  p.seed = count("seed", 0);
  p.vocab_min_count = static_cast<int>(count("vocab.min_count", 1));

  p.model.blocks = count("model.blocks", 1);
  p.model.hidden = count("model.hidden", 1);
  p.model.heads = count("model.heads", 1);
  p.model.ffn = count("model.ffn", 1);
  p.model.max_src_len = count("model.max_src_len", 1);
  p.model.max_tgt_len = count("model.max_tgt_len", 1);
  p.model.seed = p.StageSeed(1);
  p.model.Validate();

  p.training.steps = static_cast<int64_t>(count("train.steps", 0));
  p.training.batch_size = count("train.batch_size", 1);
  p.training.adam.lr = c.GetDouble("train.lr");
  p.training.adam.beta1 = fraction("train.beta1");
  p.training.adam.beta2 = fraction("train.beta2");
  p.training.adam.weight_decay = c.GetDouble("train.weight_decay");
  p.training.adam.clip_norm = c.GetDouble("train.clip_norm");
  p.training.adam.warmup_fraction = fraction("train.warmup_fraction");
  p.training.sep_padded_fraction = fraction("train.sep_padded_fraction");
  p.training.probe_size = count("train.probe_size", 1);
  p.training.seed = p.StageSeed(2);

  p.schedule.src_start = fraction("sched.src_start");
  p.schedule.src_end = fraction("sched.src_end");
  p.schedule.tgt_start = fraction("sched.tgt_start");
  p.schedule.tgt_end = fraction("sched.tgt_end");
  p.schedule.replace_mask = fraction("sched.replace_mask");
  p.schedule.replace_random = fraction("sched.replace_random");
  p.schedule.replace_keep = fraction("sched.replace_keep");
  p.schedule.total_steps = p.training.steps;
  p.schedule.Validate();

  p.beam_k = count("beam.K", 1);
  p.l_min = count("beam.L_min", 1);
  p.l_max = count("beam.L_max", 1);
  if (p.l_max < p.l_min) {
    throw Error(ErrorCode::kInvalidArgument, "beam.L_max must be >= beam.L_min");
  }
  if (p.l_max > p.model.max_tgt_len) {
    throw Error(ErrorCode::kInvalidArgument,
                "beam.L_max exceeds model.max_tgt_len");
  }
  p.generate_limit = count("generate.limit", 0);
  p.reward_r = c.GetDouble("reward.r");
  p.reward_p = c.GetDouble("reward.p");
  if (!(p.reward_r >= 0) || !(p.reward_p >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "reward.r and reward.p must be >= 0");
  }

  p.corrupt_n = count("corrupt.n", 2);
  p.heldout_n = count("selector.heldout_n", 0);
  if (p.corrupt_n % 2 || p.heldout_n % 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "corrupt.n and selector.heldout_n must be even");
  }
  p.selector.blocks = count("selector.blocks", 1);
  p.selector.hidden = count("selector.hidden", 1);
  p.selector.heads = count("selector.heads", 1);
  p.selector.ffn = count("selector.ffn", 1);
  p.selector.max_len = count("selector.max_len", 1);
  p.selector.seed = p.StageSeed(5);
  if (p.selector.hidden % p.selector.heads != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "selector.hidden must be divisible by selector.heads");
  }
  p.selector_training.epochs = count("selector.epochs", 1);
  p.selector_training.batch_size = count("selector.batch_size", 1);
  p.selector_training.adam.lr = c.GetDouble("selector.lr");
  p.selector_training.seed = p.StageSeed(6);
  return p;
}

}  // namespace ogsum::pipeline
