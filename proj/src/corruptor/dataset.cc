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

#include "corruptor/dataset.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>

#include "core/error.h"
#include "core/log.h"
#include "core/random.h"
#include "corruptor/bigram_index.h"
#include "corruptor/corruptions.h"

namespace ogsum::corruptor {

namespace {

constexpr std::array<std::string_view, 6> kKindNames = {
    "original",   "entity_replacement", "negation",
    "incomplete", "search_replace",     "swap_segments"};

}  // namespace

std::string_view KindName(CorruptionKind kind) {
  return kKindNames[static_cast<size_t>(kind)];
}

CorruptionKind KindFromName(std::string_view name) {
  for (size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<CorruptionKind>(i);
  }
  throw Error(ErrorCode::kFormat,
              "unknown corruption kind '" + std::string(name) + "'");
}

std::vector<size_t> ProportionalQuotas(size_t total,
                                       std::span<const int> weights) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<size_t> quota(weights.size(), 0);
  if (weights.empty() || sum <= 0) return quota;
  std::vector<std::pair<double, size_t>> remainders;
  size_t assigned = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(total) * weights[i] / sum;
    quota[i] = static_cast<size_t>(exact);
    assigned += quota[i];
    remainders.emplace_back(exact - static_cast<double>(quota[i]), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t r = 0; assigned < total; ++r, ++assigned) {
    ++quota[remainders[r % remainders.size()].second];
  }
  return quota;
}

std::vector<CorruptionInstance> BuildSelectorDataset(
    std::span<const SummaryPair> train, size_t total_n, uint64_t seed) {
  if (train.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty training split");
  }
  if (total_n % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "selector dataset size must be even");
  }
  Rng rng(seed);
  std::vector<std::string> summaries;
  summaries.reserve(train.size());
  for (const auto& p : train) summaries.push_back(p.summary);
  const BigramIndex index(summaries);
  const std::vector<std::string> pool = HarvestEntities(summaries);

  std::vector<CorruptionInstance> out;
  out.reserve(total_n);
  const size_t half = total_n / 2;
  for (size_t i = 0; i < half; ++i) {
    const auto& p = train[rng.Below(train.size())];
    out.push_back({p.source, p.summary, true, CorruptionKind::kOriginal});
  }

  auto attempt = [&](CorruptionKind kind, size_t id) -> std::optional<std::string> {
    const std::string& s = train[id].summary;
    switch (kind) {
      case CorruptionKind::kEntityReplacement:
        return pool.empty() ? std::nullopt : EntityReplace(s, pool, rng);
      case CorruptionKind::kNegation:
        return Negate(s);
      case CorruptionKind::kIncomplete:
        return TruncateIncomplete(s, rng);
      case CorruptionKind::kSearchReplace:
        return SearchReplace(id, index, rng);
      case CorruptionKind::kSwapSegments:
        return SwapSegments(s);
      case CorruptionKind::kOriginal:
        break;
    }
    return std::nullopt;
  };

  std::vector<size_t> pending = ProportionalQuotas(half, kNegativeWeights);
  std::vector<bool> exhausted(kNegativeKinds.size(), false);
  const size_t max_failures = 1000 + 10 * train.size();
  while (std::accumulate(pending.begin(), pending.end(), size_t{0}) > 0) {
    for (size_t k = 0; k < kNegativeKinds.size(); ++k) {
      size_t failures = 0;
      while (pending[k] > 0 && !exhausted[k]) {
        const size_t id = rng.Below(train.size());
        auto neg = attempt(kNegativeKinds[k], id);
        if (!neg || neg->empty() || *neg == train[id].summary) {
          if (++failures >= max_failures) exhausted[k] = true;
          continue;
        }
        failures = 0;
        out.push_back({train[id].source, *neg, false, kNegativeKinds[k]});
        --pending[k];
      }
      if (exhausted[k] && pending[k] > 0) {
        std::vector<int> weights(kNegativeKinds.size(), 0);
        for (size_t j = 0; j < kNegativeKinds.size(); ++j) {
          if (!exhausted[j]) weights[j] = kNegativeWeights[j];
        }
        if (std::all_of(weights.begin(), weights.end(), [](int w) { return w == 0; })) {
          throw Error(ErrorCode::kStage,
                      "no corruption type applies to the training split");
        }
        LogWarning("corruption type " + std::string(KindName(kNegativeKinds[k])) +
                   " exhausted; reassigning " + std::to_string(pending[k]) +
                   " instances");
        const auto extra = ProportionalQuotas(pending[k], weights);
        pending[k] = 0;
        for (size_t j = 0; j < extra.size(); ++j) pending[j] += extra[j];
      }
    }
  }
  rng.Shuffle(out);
  return out;
}

void WriteDatasetTsv(const std::string& path,
                     std::span<const CorruptionInstance> data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  for (const auto& d : data) {
    out << (d.admissible ? 1 : 0) << '\t' << KindName(d.kind) << '\t'
        << d.source << '\t' << d.summary << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

std::vector<CorruptionInstance> ReadDatasetTsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::vector<CorruptionInstance> data;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    size_t start = 0;
    for (size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        f.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (f.size() != 4 || (f[0] != "0" && f[0] != "1")) {
      throw Error(ErrorCode::kFormat,
                  path + ": line " + std::to_string(lineno) +
                      ": expected label, kind, source, summary");
    }
    CorruptionInstance d{f[2], f[3], f[0] == "1", KindFromName(f[1])};
    if ((d.kind == CorruptionKind::kOriginal) != d.admissible) {
      throw Error(ErrorCode::kFormat, path + ": line " + std::to_string(lineno) +
                                          ": label and kind disagree");
    }
    data.push_back(std::move(d));
  }
  return data;
}

}  // namespace ogsum::corruptor
