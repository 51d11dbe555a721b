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

#include "selector/classifier.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "core/binary_io.h"
#include "core/error.h"
#include "core/log.h"
#include "core/random.h"

namespace ogsum::selector {

namespace {

constexpr char kMagic[5] = "OGSQ";
constexpr uint8_t kFormatVersion = 1;

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// -log sigmoid(z) for label 1, -log(1 - sigmoid(z)) for label 0.
double BinaryCrossEntropy(double z, bool label) {
  const double s = label ? -z : z;
  return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
}

std::vector<int> Iota(size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

SelectorFeatures CombineFeatures(const nn::RowVec& hx, const nn::RowVec& hy) {
  const Eigen::Index d = hx.size();
  SelectorFeatures f{hx, hy, nn::RowVec(4 * d)};
  f.h.segment(0, d) = hx;
  f.h.segment(d, d) = hy;
  f.h.segment(2 * d, d) = (hx - hy).cwiseAbs();
  f.h.segment(3 * d, d) = hx.cwiseProduct(hy);
  return f;
}

std::string ClassifierConfig::ToHeader() const {
  std::ostringstream os;
  os << "blocks=" << blocks << " hidden=" << hidden << " heads=" << heads
     << " ffn=" << ffn_width() << " max_len=" << max_len << " seed=" << seed;
  return os.str();
}

ClassifierConfig ClassifierConfig::FromHeader(const std::string& header) {
  std::istringstream is(header);
  std::string item;
  ClassifierConfig c;
  size_t seen = 0;
  while (is >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = item.substr(0, eq);
    const uint64_t v = std::stoull(item.substr(eq + 1));
    if (key == "blocks") c.blocks = v;
    else if (key == "hidden") c.hidden = v;
    else if (key == "heads") c.heads = v;
    else if (key == "ffn") c.ffn = v;
    else if (key == "max_len") c.max_len = v;
    else if (key == "seed") c.seed = v;
    else continue;
    ++seen;
  }
  if (seen != 6) throw Error(ErrorCode::kFormat, "incomplete selector header");
  return c;
}

QualityClassifier::QualityClassifier(const ClassifierConfig& config,
                                     Vocabulary vocab)
    : config_(config), vocab_(std::move(vocab)) {
  if (config_.blocks < 1 || config_.hidden < 1 || config_.heads < 1 ||
      config_.max_len < 1 || config_.hidden % config_.heads != 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid selector configuration");
  }
  if (config_.ffn == 0) config_.ffn = config_.ffn_width();
  nn::TrunkConfig tc;
  tc.vocab = vocab_.size();
  tc.positions = config_.max_len;
  tc.hidden = config_.hidden;
  tc.heads = config_.heads;
  tc.ffn = config_.ffn;
  tc.blocks = config_.blocks;
  trunk_ = nn::TransformerTrunk(tc, "sel.", layout_);
  const size_t d = config_.hidden;
  w1_ = layout_.Add("sel.head.w1", 4 * d, d, true);
  b1_ = layout_.Add("sel.head.b1", 1, d, false);
  w2_ = layout_.Add("sel.head.w2", d, 1, true);
  b2_ = layout_.Add("sel.head.b2", 1, 1, false);
  params_.assign(layout_.total(), 0.0);
  Rng rng(config_.seed);
  trunk_.Init(layout_, params_, rng);
  std::span<double> p(params_);
  auto w1 = layout_.Map(p, w1_);
  for (Eigen::Index i = 0; i < w1.size(); ++i) {
    w1.data()[i] = rng.Normal() / std::sqrt(4.0 * static_cast<double>(d));
  }
  auto w2 = layout_.Map(p, w2_);
  for (Eigen::Index i = 0; i < w2.size(); ++i) {
    w2.data()[i] = rng.Normal() / std::sqrt(static_cast<double>(d));
  }
}

TokenSeq QualityClassifier::Ids(const std::string& text) const {
  TokenSeq ids = vocab_.Encode(text);
  if (ids.empty()) throw Error(ErrorCode::kInvalidArgument, "empty text");
  if (ids.size() > config_.max_len) ids.resize(config_.max_len);
  return ids;
}

nn::RowVec QualityClassifier::Encode(const std::string& text) const {
  const TokenSeq ids = Ids(text);
  const auto pos = Iota(ids.size());
  const nn::Mat z = trunk_.Forward(layout_, params_, ids, pos, ids.size(), nullptr);
  return z.colwise().mean();
}

SelectorFeatures QualityClassifier::EncodePair(const std::string& source,
                                               const std::string& summary) const {
  return CombineFeatures(Encode(source), Encode(summary));
}

double QualityClassifier::HeadForward(const nn::RowVec& h,
                                      nn::RowVec* hidden) const {
  nn::RowVec a = h * layout_.Map(params(), w1_);
  a += layout_.Row(params(), b1_);
  a = a.array().tanh();
  const double z = (a * layout_.Map(params(), w2_))(0, 0) +
                   layout_.Row(params(), b2_)(0);
  if (hidden) *hidden = std::move(a);
  return z;
}

double QualityClassifier::Logit(const std::string& source,
                                const std::string& summary) const {
  return HeadForward(EncodePair(source, summary).h, nullptr);
}

double QualityClassifier::PredictAdmissible(const std::string& source,
                                            const std::string& summary) const {
  return Sigmoid(Logit(source, summary));
}

double QualityClassifier::LossAndGrad(
    std::span<const corruptor::CorruptionInstance> batch,
    std::span<double> grad) const {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  const Eigen::Index d = static_cast<Eigen::Index>(config_.hidden);
  double total = 0.0;
  nn::TrunkTape tx, ty;
  for (const auto& ex : batch) {
    const TokenSeq xi = Ids(ex.source);
    const TokenSeq yi = Ids(ex.summary);
    const auto xp = Iota(xi.size());
    const auto yp = Iota(yi.size());
    const bool keep = !grad.empty();
    const nn::Mat zx =
        trunk_.Forward(layout_, params_, xi, xp, xi.size(), keep ? &tx : nullptr);
    const nn::Mat zy =
        trunk_.Forward(layout_, params_, yi, yp, yi.size(), keep ? &ty : nullptr);
    const SelectorFeatures f = CombineFeatures(zx.colwise().mean(), zy.colwise().mean());
    nn::RowVec a;
    const double z = HeadForward(f.h, &a);
    total += BinaryCrossEntropy(z, ex.admissible);
    if (!keep) continue;

    const double dz = (Sigmoid(z) - (ex.admissible ? 1.0 : 0.0)) * inv_n;
    layout_.Map(grad, w2_) += a.transpose() * dz;
    layout_.Row(grad, b2_)(0) += dz;
    const nn::RowVec da = layout_.Map(params(), w2_).transpose() * dz;
    const nn::RowVec dpre = da.array() * (1.0 - a.array().square());
    layout_.Map(grad, w1_).noalias() += f.h.transpose() * dpre;
    layout_.Row(grad, b1_) += dpre;
    const nn::RowVec dh = dpre * layout_.Map(params(), w1_).transpose();

    const nn::RowVec diff = f.hx - f.hy;
    const nn::RowVec sign = diff.unaryExpr(
        [](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); });
    const nn::RowVec dabs = dh.segment(2 * d, d);
    const nn::RowVec dprod = dh.segment(3 * d, d);
    const nn::RowVec dhx =
        dh.segment(0, d) + sign.cwiseProduct(dabs) + f.hy.cwiseProduct(dprod);
    const nn::RowVec dhy =
        dh.segment(d, d) - sign.cwiseProduct(dabs) + f.hx.cwiseProduct(dprod);
    const nn::Mat dzx = nn::Mat::Ones(zx.rows(), 1) * (dhx / static_cast<double>(zx.rows()));
    const nn::Mat dzy = nn::Mat::Ones(zy.rows(), 1) * (dhy / static_cast<double>(zy.rows()));
    trunk_.Backward(layout_, params_, tx, dzx, grad);
    trunk_.Backward(layout_, params_, ty, dzy, grad);
  }
  return total * inv_n;
}

void QualityClassifier::Save(const std::string& path) const {
  BinaryWriter w(path);
  w.Magic(kMagic, kFormatVersion);
  w.String(config_.ToHeader());
  w.U64(vocab_.size());
  for (const auto& t : vocab_.tokens()) w.String(t);
  w.Doubles(params_);
  w.Finish();
}

QualityClassifier QualityClassifier::Load(const std::string& path) {
  BinaryReader r(path);
  const uint8_t version = r.Magic(kMagic);
  if (version != kFormatVersion) {
    throw Error(ErrorCode::kFormat,
                path + ": unsupported format version " + std::to_string(version));
  }
  const ClassifierConfig config = ClassifierConfig::FromHeader(r.String());
  const uint64_t n = r.U64();
  std::vector<std::string> tokens;
  tokens.reserve(n);
  for (uint64_t i = 0; i < n; ++i) tokens.push_back(r.String());
  QualityClassifier clf(config, Vocabulary::FromTokens(std::move(tokens)));
  std::vector<double> values = r.Doubles();
  if (values.size() != clf.params_.size()) {
    throw Error(ErrorCode::kFormat, path + ": parameter count mismatch");
  }
  clf.params_.assign(values.begin(), values.end());
  return clf;
}

EvalSummary Evaluate(const QualityClassifier& clf,
                     std::span<const corruptor::CorruptionInstance> data) {
  EvalSummary s;
  if (data.empty()) return s;
  std::map<std::string, std::pair<size_t, size_t>> by_kind;
  size_t correct = 0, n_pos = 0, n_neg = 0;
  for (const auto& ex : data) {
    const double p = clf.PredictAdmissible(ex.source, ex.summary);
    const bool ok = (p >= 0.5) == ex.admissible;
    correct += ok;
    auto& k = by_kind[std::string(corruptor::KindName(ex.kind))];
    k.first += ok;
    ++k.second;
    if (ex.admissible) {
      s.mean_prob_positive += p;
      ++n_pos;
    } else {
      s.mean_prob_negative += p;
      ++n_neg;
    }
  }
  s.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  if (n_pos) s.mean_prob_positive /= static_cast<double>(n_pos);
  if (n_neg) s.mean_prob_negative /= static_cast<double>(n_neg);
  for (const auto& [name, c] : by_kind) {
    s.accuracy_by_kind[name] =
        static_cast<double>(c.first) / static_cast<double>(c.second);
  }
  return s;
}

Vocabulary SelectorVocabulary(
    std::span<const corruptor::CorruptionInstance> data) {
  std::vector<std::string> corpus;
  corpus.reserve(2 * data.size());
  for (const auto& ex : data) {
    corpus.push_back(ex.source);
    corpus.push_back(ex.summary);
  }
  return Vocabulary::Build(corpus, 1);
}

QualityClassifier TrainQualitySelector(
    std::span<const corruptor::CorruptionInstance> train,
    std::span<const corruptor::CorruptionInstance> heldout,
    const ClassifierConfig& config, const ClassifierTrainOptions& options,
    ClassifierReport* report,
    const std::function<void(size_t, double)>& on_epoch) {
  if (train.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty selector training set");
  }
  if (options.batch_size == 0 || options.epochs == 0) {
    throw Error(ErrorCode::kInvalidArgument, "epochs and batch_size must be >= 1");
  }
  const size_t positives = static_cast<size_t>(std::count_if(
      train.begin(), train.end(), [](const auto& e) { return e.admissible; }));
  if (2 * positives != train.size()) {
    LogWarning("selector training set is unbalanced: " +
               std::to_string(positives) + " admissible of " +
               std::to_string(train.size()));
  }

  QualityClassifier clf(config, SelectorVocabulary(train));
  const size_t batches = (train.size() + options.batch_size - 1) / options.batch_size;
  nn::AdamW opt(clf.layout(), options.adam,
                static_cast<int64_t>(batches * options.epochs));
  Rng rng(options.seed);
  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  nn::ParamBuffer grad(clf.params().size());
  std::vector<corruptor::CorruptionInstance> batch;
  ClassifierReport local;
  for (size_t epoch = 1; epoch <= options.epochs; ++epoch) {
    rng.Shuffle(order);
    double sum = 0.0;
    for (size_t b = 0; b < batches; ++b) {
      batch.clear();
      const size_t end = std::min(train.size(), (b + 1) * options.batch_size);
      for (size_t i = b * options.batch_size; i < end; ++i) {
        batch.push_back(train[order[i]]);
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      const double loss = clf.LossAndGrad(batch, grad);
      if (!std::isfinite(loss)) {
        throw Error(ErrorCode::kNumeric, "non-finite selector loss in epoch " +
                                             std::to_string(epoch));
      }
      sum += loss * static_cast<double>(batch.size());
      opt.Step(clf.mutable_params(), grad);
    }
    const double mean = sum / static_cast<double>(train.size());
    local.epoch_loss.push_back(mean);
    if (on_epoch) on_epoch(epoch, mean);
  }
  if (!heldout.empty()) {
    const EvalSummary e = Evaluate(clf, heldout);
    local.heldout_accuracy = e.accuracy;
    local.mean_prob_positive = e.mean_prob_positive;
    local.mean_prob_negative = e.mean_prob_negative;
    local.accuracy_by_kind = e.accuracy_by_kind;
  }
  if (report) *report = std::move(local);
  return clf;
}

}  // namespace ogsum::selector
