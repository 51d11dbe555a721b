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

#ifndef OGSUM_PIPELINE_CONFIG_H_
#define OGSUM_PIPELINE_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "model/generator.h"
#include "model/training.h"
#include "selector/classifier.h"

namespace ogsum::pipeline {

// Flat "key = value" settings. Every key has a default; unknown keys are
// rejected. Relative paths in a loaded file resolve against its directory.
class Config {
 public:
  Config();

  // '#' starts a comment; blank lines are ignored.
  static Config Parse(const std::string& text, const std::string& base_dir = "");
  static Config Load(const std::string& path);

  // Throws for unknown keys.
  void Set(const std::string& key, const std::string& value);
  // "key=value".
  void Override(const std::string& assignment);

  const std::string& Get(const std::string& key) const;
  int64_t GetInt(const std::string& key) const;
  double GetDouble(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

  // Sorted "key = value" lines of every setting except out_dir.
  std::string Snapshot() const;

  static const std::vector<std::pair<std::string, std::string>>& Defaults();
  static bool IsPathKey(const std::string& key);

 private:
  std::map<std::string, std::string> values_;
};

struct PipelineConfig {
  std::string train, valid, test, out_dir;
  uint64_t seed = 1;
  int vocab_min_count = 1;
  model::ModelConfig model;
  model::ScheduleConfig schedule;
  model::TrainOptions training;
  size_t beam_k = 20;
  size_t l_min = 7;
  size_t l_max = 16;
  size_t generate_limit = 200;  // 0 decodes the whole test split
  double reward_r = 2.0;
  double reward_p = 1.0;
  size_t corrupt_n = 20000;
  size_t heldout_n = 2000;
  selector::ClassifierConfig selector;
  selector::ClassifierTrainOptions selector_training;

  // Derived stage seeds.
  uint64_t StageSeed(uint64_t stage) const;
};

// Range checks included: L range within max_tgt_len, K >= 1.
PipelineConfig Resolve(const Config& config);

}  // namespace ogsum::pipeline

#endif  // OGSUM_PIPELINE_CONFIG_H_
