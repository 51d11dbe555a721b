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

#ifndef OGSUM_PIPELINE_SYNTH_CORPUS_H_
#define OGSUM_PIPELINE_SYNTH_CORPUS_H_

#include <cstdint>
#include <vector>

#include "corruptor/dataset.h"

namespace ogsum::pipeline {

// Templated headline-style pairs. The summary is a keyword core of 7-16
// words (subject, optional auxiliary, verb, object, modifiers); the source
// wraps the same core in lowercase filler clauses drawn from a disjoint
// vocabulary and ends with " .".
std::vector<corruptor::SummaryPair> SynthCorpus(size_t n, uint64_t seed);

}  // namespace ogsum::pipeline

#endif  // OGSUM_PIPELINE_SYNTH_CORPUS_H_
