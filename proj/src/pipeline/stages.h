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

#ifndef OGSUM_PIPELINE_STAGES_H_
#define OGSUM_PIPELINE_STAGES_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pipeline/config.h"
#include "selector/scoring.h"

namespace ogsum::pipeline {

// Artifact file names inside out_dir.
inline constexpr const char* kVocabFile = "vocab.txt";
inline constexpr const char* kGeneratorFile = "generator.ckpt";
inline constexpr const char* kGeneratorLog = "train_generator.log";
inline constexpr const char* kHypothesesFile = "hypotheses.jsonl";
inline constexpr const char* kLengthsFile = "lengths.jsonl";
inline constexpr const char* kCorruptionsFile = "corruptions.tsv";
inline constexpr const char* kHeldoutFile = "corruptions_heldout.tsv";
inline constexpr const char* kSelectorFile = "selector.ckpt";
inline constexpr const char* kSelectorLog = "train_selector.log";
inline constexpr const char* kSelectionsFile = "selections.jsonl";
inline constexpr const char* kReportText = "report.txt";
inline constexpr const char* kReportJsonl = "report.jsonl";
inline constexpr const char* kManifestFile = "manifest.txt";

struct HypothesisRecord {
  size_t instance_id = 0;
  size_t length = 0;
  std::string tokens;  // space-joined
  std::vector<int> order;
  double score = 0.0;
};

struct LengthRecord {
  size_t instance_id = 0;
  size_t predicted_length = 0;
  bool truncated = false;
};

struct SelectionRecord {
  size_t instance_id = 0;
  selector::SelectMode mode = selector::SelectMode::kAverage;
  std::vector<size_t> chosen;  // one length, or every length for average
  double score = 0.0;
  std::optional<double> probability;
};

std::string FormatHypothesis(const HypothesisRecord& r);
std::vector<HypothesisRecord> ReadHypotheses(const std::string& path);
std::vector<LengthRecord> ReadLengths(const std::string& path);
std::vector<SelectionRecord> ReadSelections(const std::string& path);

std::string ArtifactPath(const PipelineConfig& cfg, const char* name);

// Throws a config error naming the first listed input that is not a file.
void RequireInputs(const PipelineConfig& cfg, const std::vector<std::string>& keys);

void TrainGeneratorStage(const PipelineConfig& cfg);
void GenerateStage(const PipelineConfig& cfg);
void BuildCorruptionsStage(const PipelineConfig& cfg);
void TrainSelectorStage(const PipelineConfig& cfg);
void SelectStage(const PipelineConfig& cfg,
                 const std::vector<selector::SelectMode>& modes);
void EvaluateStage(const PipelineConfig& cfg);

// Validates every input, runs all stages in order and writes the manifest.
// A failing stage is rethrown as ErrorCode::kStage naming the stage.
void RunPipeline(const Config& config);

}  // namespace ogsum::pipeline

#endif  // OGSUM_PIPELINE_STAGES_H_
