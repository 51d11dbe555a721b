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

#ifndef OGSUM_CORRUPTOR_DATASET_H_
#define OGSUM_CORRUPTOR_DATASET_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ogsum::corruptor {

enum class CorruptionKind {
  kOriginal = 0,
  kEntityReplacement,
  kNegation,
  kIncomplete,
  kSearchReplace,
  kSwapSegments,
};

inline constexpr std::array<CorruptionKind, 5> kNegativeKinds = {
    CorruptionKind::kSearchReplace, CorruptionKind::kEntityReplacement,
    CorruptionKind::kNegation, CorruptionKind::kIncomplete,
    CorruptionKind::kSwapSegments};

// Relative weight of each negative kind in a selector dataset, aligned with
// kNegativeKinds.
inline constexpr std::array<int, 5> kNegativeWeights = {226, 400, 400, 400, 400};

std::string_view KindName(CorruptionKind kind);
// Throws on an unknown name.
CorruptionKind KindFromName(std::string_view name);

struct CorruptionInstance {
  std::string source;
  std::string summary;
  bool admissible = false;
  CorruptionKind kind = CorruptionKind::kOriginal;

  bool operator==(const CorruptionInstance&) const = default;
};

struct SummaryPair {
  std::string source;
  std::string summary;
};

// Integer split of `total` in proportion to `weights` (largest remainder,
// ties to the earlier entry). Sums to `total` exactly.
std::vector<size_t> ProportionalQuotas(size_t total, std::span<const int> weights);

// Balanced selector dataset: total_n / 2 originals and total_n / 2 negatives
// split across kinds by kNegativeWeights. Inapplicable corruptions and
// negatives equal to their ground truth are redrawn. Examples are drawn with
// replacement; the output is shuffled. total_n must be even.
std::vector<CorruptionInstance> BuildSelectorDataset(
    std::span<const SummaryPair> train, size_t total_n, uint64_t seed);

// label <TAB> kind <TAB> source <TAB> summary, one record per line.
void WriteDatasetTsv(const std::string& path,
                     std::span<const CorruptionInstance> data);
std::vector<CorruptionInstance> ReadDatasetTsv(const std::string& path);

}  // namespace ogsum::corruptor

#endif  // OGSUM_CORRUPTOR_DATASET_H_
