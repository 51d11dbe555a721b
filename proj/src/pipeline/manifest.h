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

#ifndef OGSUM_PIPELINE_MANIFEST_H_
#define OGSUM_PIPELINE_MANIFEST_H_

#include <string>

#include "pipeline/config.h"

namespace ogsum::pipeline {

// Config snapshot, SHA-256 of the inputs, then SHA-256 of every regular file
// in out_dir (sorted by name, the manifest itself excluded).
std::string BuildManifest(const Config& config, const PipelineConfig& resolved);
void WriteManifest(const Config& config, const PipelineConfig& resolved);

}  // namespace ogsum::pipeline

#endif  // OGSUM_PIPELINE_MANIFEST_H_
