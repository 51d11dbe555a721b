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

#ifndef OGSUM_PIPELINE_IO_H_
#define OGSUM_PIPELINE_IO_H_

#include <span>
#include <string>
#include <vector>

#include "corruptor/dataset.h"

namespace ogsum::pipeline {

// One (source, summary) pair per line separated by exactly one tab. CRLF is
// read as LF. Line i (from 0) becomes instance id i. Errors name the line.
std::vector<corruptor::SummaryPair> LoadTsv(const std::string& path);
void WriteTsv(const std::string& path, std::span<const corruptor::SummaryPair> pairs);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& content);
bool FileExists(const std::string& path);

// Lowercase hex SHA-256 of a file's bytes.
std::string Sha256File(const std::string& path);

}  // namespace ogsum::pipeline

#endif  // OGSUM_PIPELINE_IO_H_
