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

#ifndef OGSUM_MODEL_TRAINING_H_
#define OGSUM_MODEL_TRAINING_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "core/random.h"
#include "core/sequence.h"
#include "model/generator.h"
#include "nn/adamw.h"

namespace ogsum::model {

// Linear mask-rate schedules for the two sides plus the replacement mix
// applied to every chosen token.
struct ScheduleConfig {
  double src_start = 0.10;
  double src_end = 0.00;
  double tgt_start = 0.90;
  double tgt_end = 0.60;
  double replace_mask = 0.80;
  double replace_random = 0.10;
  double replace_keep = 0.10;
  int64_t total_steps = 1;

  void Validate() const;
};

struct MaskRates {
  double source = 0.0;
  double target = 0.0;
};

// rate(t) = start + (end - start) * t / T; t beyond T clamps to the end.
MaskRates MaskRateSchedule(const ScheduleConfig& config, int64_t step);

struct TrainingPair {
  TokenSeq source;
  TokenSeq summary;
};

// Chooses each token independently with its side's rate. A chosen token
// becomes MASK, a random non-special token, or stays, per the mix; targets
// hold the original id of every chosen position.
CorruptedExample CorruptForTraining(const TokenSeq& source,
                                    const TokenSeq& slots, MaskRates rates,
                                    const ScheduleConfig& mix,
                                    size_t vocab_size, Rng& rng);

// Summary slots for the SEP-terminated form used to learn where a summary
// ends: the summary followed by SEP up to `width` slots.
TokenSeq SepPaddedSlots(const TokenSeq& summary, size_t width);

struct TrainOptions {
  int64_t steps = 3000;
  size_t batch_size = 16;
  nn::AdamWOptions adam;
  // Share of examples presented in SEP-padded form.
  double sep_padded_fraction = 0.25;
  uint64_t seed = 1;
  // Fixed held-aside batch measured before and after training.
  size_t probe_size = 128;
};

struct EpochLog {
  int epoch = 0;
  int64_t end_step = 0;
  double mean_loss = 0.0;
};

struct TrainReport {
  double initial_probe_loss = 0.0;
  double final_probe_loss = 0.0;
  std::vector<EpochLog> epochs;
  int64_t steps = 0;
};

// Schedule-driven corruption + loss minimisation. Deterministic given the
// model initialisation, data and options. Throws Error(kNumeric) with the
// step index on a non-finite loss.
TrainReport Train(Generator& model, ScheduleConfig schedule,
                  std::span<const TrainingPair> data,
                  const TrainOptions& options,
                  const std::function<void(const EpochLog&)>& on_epoch = {});

// Probe batch used by Train: the first `size` pairs of a seeded shuffle,
// corrupted at the end-of-schedule rates.
std::vector<CorruptedExample> MakeProbeBatch(
    std::span<const TrainingPair> data, const ScheduleConfig& schedule,
    size_t vocab_size, size_t size, uint64_t seed);

}  // namespace ogsum::model

#endif  // OGSUM_MODEL_TRAINING_H_
