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

#include "pipeline/manifest.h"

#include <algorithm>
#include <filesystem>

#include "pipeline/io.h"
#include "pipeline/stages.h"

namespace ogsum::pipeline {

std::string BuildManifest(const Config& config, const PipelineConfig& resolved) {
  namespace fs = std::filesystem;
  std::string out = "# ogsum manifest 1\n[config]\n";
  out += config.Snapshot();
  out += "[inputs]\n";
  for (const auto& [key, path] : {std::pair<std::string, std::string>{"train", resolved.train},
                                  {"valid", resolved.valid},
                                  {"test", resolved.test}}) {
    if (path.empty() || !FileExists(path)) continue;
    out += key + " " + Sha256File(path) + "\n";
  }
  out += "[artifacts]\n";
  std::vector<std::string> names;
  if (fs::is_directory(resolved.out_dir)) {
    for (const auto& entry : fs::directory_iterator(resolved.out_dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string name = entry.path().filename().string();
      if (name != kManifestFile) names.push_back(name);
    }
  }
  std::sort(names.begin(), names.end());
  for (const auto& name : names) {
    out += name + " " + Sha256File((fs::path(resolved.out_dir) / name).string()) + "\n";
  }
  return out;
}

void WriteManifest(const Config& config, const PipelineConfig& resolved) {
  WriteFile(ArtifactPath(resolved, kManifestFile), BuildManifest(config, resolved));
}

}  // namespace ogsum::pipeline
