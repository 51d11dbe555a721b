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

#ifndef OGSUM_SELECTOR_CLASSIFIER_H_
#define OGSUM_SELECTOR_CLASSIFIER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/vocab.h"
#include "corruptor/dataset.h"
#include "nn/adamw.h"
#include "nn/params.h"
#include "nn/transformer.h"

namespace ogsum::selector {

// Pooled source/summary vectors and their 4d combination
// [h_x ; h_y ; |h_x - h_y| ; h_x * h_y].
struct SelectorFeatures {
  nn::RowVec hx;
  nn::RowVec hy;
  nn::RowVec h;
};

SelectorFeatures CombineFeatures(const nn::RowVec& hx, const nn::RowVec& hy);

struct ClassifierConfig {
  size_t blocks = 1;
  size_t hidden = 32;
  size_t heads = 2;
  size_t ffn = 0;  // 0 means 4 * hidden
  size_t max_len = 48;
  uint64_t seed = 1;

  size_t ffn_width() const { return ffn ? ffn : 4 * hidden; }
  std::string ToHeader() const;
  static ClassifierConfig FromHeader(const std::string& header);
};

struct ClassifierTrainOptions {
  size_t epochs = 4;
  size_t batch_size = 32;
  nn::AdamWOptions adam{1e-3, 0.9, 0.999, 1e-8, 0.01, 1.0, 0.05};
  uint64_t seed = 1;
};

// Binary admissibility classifier: a bidirectional encoder shared by source
// and summary, mean pooling, the 4d combination, then one tanh hidden layer
// of width d and a logit.
class QualityClassifier {
 public:
  QualityClassifier(const ClassifierConfig& config, Vocabulary vocab);

  const ClassifierConfig& config() const { return config_; }
  const Vocabulary& vocab() const { return vocab_; }
  const nn::ParamLayout& layout() const { return layout_; }
  std::span<const double> params() const { return params_; }
  std::span<double> mutable_params() { return params_; }

  // Mean-pooled final-layer vector; throws on empty text. Texts longer than
  // max_len are cut to max_len tokens.
  nn::RowVec Encode(const std::string& text) const;
  SelectorFeatures EncodePair(const std::string& source,
                              const std::string& summary) const;

  double Logit(const std::string& source, const std::string& summary) const;
  // Probability in (0, 1) that the summary is admissible.
  double PredictAdmissible(const std::string& source,
                           const std::string& summary) const;

  // Mean binary cross-entropy; adds gradients into `grad` when non-null.
  double LossAndGrad(std::span<const corruptor::CorruptionInstance> batch,
                     std::span<double> grad) const;

  void Save(const std::string& path) const;
  static QualityClassifier Load(const std::string& path);

 private:
  TokenSeq Ids(const std::string& text) const;
  double HeadForward(const nn::RowVec& h, nn::RowVec* hidden) const;

  ClassifierConfig config_;
  Vocabulary vocab_;
  nn::ParamLayout layout_;
  nn::TransformerTrunk trunk_;
  size_t w1_ = 0, b1_ = 0, w2_ = 0, b2_ = 0;
  nn::ParamBuffer params_;
};

struct ClassifierReport {
  std::vector<double> epoch_loss;
  double heldout_accuracy = 0.0;
  double mean_prob_positive = 0.0;
  double mean_prob_negative = 0.0;
  std::map<std::string, double> accuracy_by_kind;
};

struct EvalSummary {
  double accuracy = 0.0;
  double mean_prob_positive = 0.0;
  double mean_prob_negative = 0.0;
  std::map<std::string, double> accuracy_by_kind;
};

// Accuracy at threshold 0.5.
EvalSummary Evaluate(const QualityClassifier& clf,
                     std::span<const corruptor::CorruptionInstance> data);

// Vocabulary over every source and summary of `data`.
Vocabulary SelectorVocabulary(std::span<const corruptor::CorruptionInstance> data);

// Minimises binary cross-entropy over `train`; reports accuracy on `heldout`.
// Logs a warning (and proceeds) when `train` is not balanced.
QualityClassifier TrainQualitySelector(
    std::span<const corruptor::CorruptionInstance> train,
    std::span<const corruptor::CorruptionInstance> heldout,
    const ClassifierConfig& config, const ClassifierTrainOptions& options,
    ClassifierReport* report,
    const std::function<void(size_t epoch, double loss)>& on_epoch = {});

}  // namespace ogsum::selector

#endif  // OGSUM_SELECTOR_CLASSIFIER_H_
