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

#include "model/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "core/error.h"
#include "core/vocab.h"
#include "nn/params.h"

namespace ogsum::model {

namespace {

bool InUnit(double x) { return x >= 0.0 && x <= 1.0; }

TokenSeq Clip(const TokenSeq& seq, size_t n) {
  return seq.size() <= n ? seq : TokenSeq(seq.begin(), seq.begin() + n);
}

}  // namespace

void ScheduleConfig::Validate() const {
  if (!InUnit(src_start) || !InUnit(src_end) || !InUnit(tgt_start) ||
      !InUnit(tgt_end)) {
    throw Error(ErrorCode::kInvalidArgument, "mask rates must lie in [0,1]");
  }
  if (src_start < src_end || tgt_start < tgt_end) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask-rate schedules must not increase");
  }
  if (!InUnit(replace_mask) || !InUnit(replace_random) ||
      !InUnit(replace_keep) ||
      std::abs(replace_mask + replace_random + replace_keep - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                "replacement mix must be fractions summing to 1");
  }
  if (total_steps < 0) {
    throw Error(ErrorCode::kInvalidArgument, "total_steps must be >= 0");
  }
}

MaskRates MaskRateSchedule(const ScheduleConfig& config, int64_t step) {
  const double total = static_cast<double>(std::max<int64_t>(config.total_steps, 1));
  const double frac =
      config.total_steps <= 0
          ? 1.0
          : std::clamp(static_cast<double>(step) / total, 0.0, 1.0);
  return MaskRates{config.src_start + (config.src_end - config.src_start) * frac,
                   config.tgt_start + (config.tgt_end - config.tgt_start) * frac};
}

CorruptedExample CorruptForTraining(const TokenSeq& source,
                                    const TokenSeq& slots, MaskRates rates,
                                    const ScheduleConfig& mix,
                                    size_t vocab_size, Rng& rng) {
  CorruptedExample ex;
  ex.source = source;
  ex.slots = slots;
  const size_t n_content = vocab_size - Vocabulary::kNumSpecials;
  auto corrupt = [&](TokenSeq& seq, double rate, size_t row_offset) {
    for (size_t i = 0; i < seq.size(); ++i) {
      if (rng.Uniform() >= rate) continue;
      ex.targets.push_back(Target{row_offset + i, seq[i]});
      const double u = rng.Uniform();
      if (u < mix.replace_mask) {
        seq[i] = Vocabulary::kMask;
      } else if (u < mix.replace_mask + mix.replace_random && n_content > 0) {
        seq[i] = Vocabulary::kNumSpecials +
                 static_cast<TokenId>(rng.Below(n_content));
      }
    }
  };
  corrupt(ex.source, rates.source, 0);
  corrupt(ex.slots, rates.target, source.size());
  return ex;
}

TokenSeq SepPaddedSlots(const TokenSeq& summary, size_t width) {
  TokenSeq slots = Clip(summary, width);
  slots.resize(width, Vocabulary::kSep);
  return slots;
}

std::vector<CorruptedExample> MakeProbeBatch(std::span<const TrainingPair> data,
                                             const ScheduleConfig& schedule,
                                             size_t vocab_size, size_t size,
                                             uint64_t seed) {
  Rng rng(Rng::Derive(seed, 0x70726f6265ULL));
  std::vector<size_t> idx(data.size());
  std::iota(idx.begin(), idx.end(), 0);
  rng.Shuffle(idx);
  idx.resize(std::min(size, idx.size()));
  const MaskRates rates{schedule.src_end, schedule.tgt_end};
  std::vector<CorruptedExample> probe;
  for (size_t i : idx) {
    probe.push_back(CorruptForTraining(data[i].source, data[i].summary, rates,
                                       schedule, vocab_size, rng));
  }
  return probe;
}

TrainReport Train(Generator& model, ScheduleConfig schedule,
                  std::span<const TrainingPair> data,
                  const TrainOptions& options,
                  const std::function<void(const EpochLog&)>& on_epoch) {
  if (data.empty()) throw Error(ErrorCode::kInvalidArgument, "empty dataset");
  if (options.batch_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  }
  schedule.total_steps = options.steps;
  schedule.Validate();

  const ModelConfig& mc = model.config();
  std::vector<TrainingPair> clipped;
  clipped.reserve(data.size());
  for (const auto& p : data) {
    clipped.push_back(TrainingPair{Clip(p.source, mc.max_src_len),
                                   Clip(p.summary, mc.max_tgt_len)});
  }

  TrainReport report;
  const auto probe = MakeProbeBatch(clipped, schedule, model.vocab_size(),
                                    options.probe_size, options.seed);
  report.initial_probe_loss = model.Loss(probe);

  nn::AdamW opt(model.layout(), options.adam, options.steps);
  Rng rng(options.seed);
  std::vector<size_t> order(clipped.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  size_t cursor = 0;
  int epoch = 1;
  double epoch_sum = 0.0;
  int64_t epoch_steps = 0;
  nn::ParamBuffer grad(model.num_params());
  std::vector<CorruptedExample> batch;

  auto close_epoch = [&](int64_t end_step) {
    EpochLog log{epoch, end_step, epoch_sum / static_cast<double>(epoch_steps)};
    report.epochs.push_back(log);
    if (on_epoch) on_epoch(log);
    epoch_sum = 0.0;
    epoch_steps = 0;
  };

  for (int64_t step = 0; step < options.steps; ++step) {
    const MaskRates rates = MaskRateSchedule(schedule, step);
    batch.clear();
    bool wrapped = false;
    for (size_t b = 0; b < options.batch_size; ++b) {
      const TrainingPair& p = clipped[order[cursor]];
      if (++cursor == order.size()) {
        cursor = 0;
        rng.Shuffle(order);
        wrapped = true;
      }
      const bool padded = rng.Uniform() < options.sep_padded_fraction;
      const TokenSeq slots =
          padded ? SepPaddedSlots(p.summary, mc.max_tgt_len) : p.summary;
      batch.push_back(CorruptForTraining(p.source, slots, rates, schedule,
                                         model.vocab_size(), rng));
    }
    std::fill(grad.begin(), grad.end(), 0.0);
    const double loss = model.LossAndGrad(batch, grad);
    if (!std::isfinite(loss) || !nn::AllFinite(grad)) {
      throw Error(ErrorCode::kNumeric,
                  "non-finite loss at step " + std::to_string(step));
    }
    opt.Step(model.mutable_params(), grad);
    if (!nn::AllFinite(model.params())) {
      throw Error(ErrorCode::kNumeric,
                  "non-finite parameters after step " + std::to_string(step));
    }
    model.set_step_count(model.step_count() + 1);
    epoch_sum += loss;
    ++epoch_steps;
    if (wrapped) {
      close_epoch(step + 1);
      ++epoch;
    }
  }
  if (epoch_steps > 0) close_epoch(options.steps);
  report.steps = options.steps;
  report.final_probe_loss = model.Loss(probe);
  return report;
}

}  // namespace ogsum::model
