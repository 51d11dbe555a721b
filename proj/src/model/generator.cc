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

#include "model/generator.h"

#include <cmath>
#include <map>
#include <sstream>

#include "core/binary_io.h"
#include "core/error.h"
#include "core/random.h"

namespace ogsum::model {

namespace {

constexpr char kMagic[5] = "OGSG";
constexpr uint8_t kFormatVersion = 1;

size_t ParseCount(const std::map<std::string, std::string>& kv,
                  const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) {
    throw Error(ErrorCode::kFormat, "checkpoint header lacks '" + key + "'");
  }
  return static_cast<size_t>(std::stoull(it->second));
}

}  // namespace

void ModelConfig::Validate() const {
  if (blocks < 1 || hidden < 1 || heads < 1 || max_src_len < 1 ||
      max_tgt_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "model counts must all be >= 1");
  }
  if (hidden % heads != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "hidden must be divisible by heads");
  }
}

std::string ModelConfig::ToHeader() const {
  std::ostringstream os;
  os << "blocks=" << blocks << " hidden=" << hidden << " heads=" << heads
     << " ffn=" << ffn_width() << " max_src_len=" << max_src_len
     << " max_tgt_len=" << max_tgt_len << " seed=" << seed;
  return os.str();
}

ModelConfig ModelConfig::FromHeader(const std::string& header) {
  std::map<std::string, std::string> kv;
  std::istringstream is(header);
  std::string item;
  while (is >> item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  ModelConfig c;
  c.blocks = ParseCount(kv, "blocks");
  c.hidden = ParseCount(kv, "hidden");
  c.heads = ParseCount(kv, "heads");
  c.ffn = ParseCount(kv, "ffn");
  c.max_src_len = ParseCount(kv, "max_src_len");
  c.max_tgt_len = ParseCount(kv, "max_tgt_len");
  c.seed = ParseCount(kv, "seed");
  c.Validate();
  return c;
}

Generator::Generator(const ModelConfig& config, size_t vocab_size)
    : config_(config), vocab_size_(vocab_size) {
  config_.Validate();
  if (config_.ffn == 0) config_.ffn = config_.ffn_width();
  nn::TrunkConfig tc;
  tc.vocab = vocab_size;
  tc.positions = config_.max_src_len + config_.max_tgt_len;
  tc.hidden = config_.hidden;
  tc.heads = config_.heads;
  tc.ffn = config_.ffn;
  tc.blocks = config_.blocks;
  trunk_ = nn::TransformerTrunk(tc, "gen.", layout_);
  out_w_ = layout_.Add("gen.out.w", config_.hidden, vocab_size, true);
  out_b_ = layout_.Add("gen.out.b", 1, vocab_size, false);
  params_.assign(layout_.total(), 0.0);
  Rng rng(config_.seed);
  trunk_.Init(layout_, params_, rng);
  auto w = layout_.Map(std::span<double>(params_), out_w_);
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    w.data()[i] = rng.Normal() / std::sqrt(static_cast<double>(config_.hidden));
  }
}

void Generator::ZeroOutputProjection() {
  layout_.Map(std::span<double>(params_), out_w_).setZero();
  layout_.Map(std::span<double>(params_), out_b_).setZero();
}

void Generator::CheckLengths(size_t n_src, size_t n_slots) const {
  if (n_src > config_.max_src_len || n_slots > config_.max_tgt_len) {
    throw Error(ErrorCode::kOutOfRange, "sequence too long");
  }
}

std::vector<int> Generator::Positions(size_t n_src, size_t n_slots) const {
  std::vector<int> pos(n_src + n_slots);
  for (size_t i = 0; i < n_src; ++i) pos[i] = static_cast<int>(i);
  for (size_t j = 0; j < n_slots; ++j) {
    pos[n_src + j] = static_cast<int>(config_.max_src_len + j);
  }
  return pos;
}

SourceContext Generator::EncodeSource(std::span<const TokenId> source) const {
  CheckLengths(source.size(), 0);
  SourceContext ctx;
  ctx.length = source.size();
  const auto pos = Positions(source.size(), 0);
  ctx.cache = trunk_.EncodePrefix(layout_, params_, source, pos);
  return ctx;
}

nn::Mat Generator::LogProbs(const SourceContext& source,
                            std::span<const TokenId> slots) const {
  CheckLengths(source.length, slots.size());
  std::vector<int> pos(slots.size());
  for (size_t j = 0; j < slots.size(); ++j) {
    pos[j] = static_cast<int>(config_.max_src_len + j);
  }
  const nn::Mat z = trunk_.ForwardSuffix(layout_, params_, source.cache, slots, pos);
  nn::Mat logits = z * layout_.Map(params(), out_w_);
  logits.rowwise() += layout_.Row(params(), out_b_);
  return nn::LogSoftmaxRows(logits);
}

ProbMatrix Generator::PredictAllPositions(std::span<const TokenId> source,
                                          const PartialSummary& partial) const {
  CheckLengths(source.size(), partial.length());
  const SourceContext ctx = EncodeSource(source);
  ProbMatrix out;
  out.probs = LogProbs(ctx, partial.tokens()).array().exp();
  return out;
}

double Generator::Loss(std::span<const CorruptedExample> batch) const {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  double total = 0.0;
  size_t count = 0;
  for (const auto& ex : batch) {
    if (ex.targets.empty()) continue;
    CheckLengths(ex.source.size(), ex.slots.size());
    TokenSeq ids = ex.source;
    ids.insert(ids.end(), ex.slots.begin(), ex.slots.end());
    const auto pos = Positions(ex.source.size(), ex.slots.size());
    const nn::Mat z =
        trunk_.Forward(layout_, params_, ids, pos, ex.source.size(), nullptr);
    nn::Mat zt(ex.targets.size(), z.cols());
    for (size_t i = 0; i < ex.targets.size(); ++i) {
      zt.row(i) = z.row(ex.targets[i].row);
    }
    nn::Mat logits = zt * layout_.Map(params(), out_w_);
    logits.rowwise() += layout_.Row(params(), out_b_);
    const nn::Mat lp = nn::LogSoftmaxRows(logits);
    for (size_t i = 0; i < ex.targets.size(); ++i) {
      total -= lp(i, ex.targets[i].original);
    }
    count += ex.targets.size();
  }
  return count ? total / static_cast<double>(count) : 0.0;
}

double Generator::LossAndGrad(std::span<const CorruptedExample> batch,
                              std::span<double> grad) const {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  size_t count = 0;
  for (const auto& ex : batch) count += ex.targets.size();
  if (count == 0) return 0.0;
  const double inv_count = 1.0 / static_cast<double>(count);

  double total = 0.0;
  auto gw = layout_.Map(grad, out_w_);
  auto gb = layout_.Row(grad, out_b_);
  const auto w = layout_.Map(params(), out_w_);
  nn::TrunkTape tape;
  for (const auto& ex : batch) {
    if (ex.targets.empty()) continue;
    CheckLengths(ex.source.size(), ex.slots.size());
    TokenSeq ids = ex.source;
    ids.insert(ids.end(), ex.slots.begin(), ex.slots.end());
    const auto pos = Positions(ex.source.size(), ex.slots.size());
    const nn::Mat z =
        trunk_.Forward(layout_, params_, ids, pos, ex.source.size(), &tape);
    nn::Mat zt(ex.targets.size(), z.cols());
    for (size_t i = 0; i < ex.targets.size(); ++i) {
      zt.row(i) = z.row(ex.targets[i].row);
    }
    nn::Mat logits = zt * w;
    logits.rowwise() += layout_.Row(params(), out_b_);
    const nn::Mat lp = nn::LogSoftmaxRows(logits);
    nn::Mat dlogits = lp.array().exp();
    for (size_t i = 0; i < ex.targets.size(); ++i) {
      total -= lp(i, ex.targets[i].original);
      dlogits(i, ex.targets[i].original) -= 1.0;
    }
    dlogits *= inv_count;
    gw.noalias() += zt.transpose() * dlogits;
    gb += dlogits.colwise().sum();
    const nn::Mat dzt = dlogits * w.transpose();
    nn::Mat dz = nn::Mat::Zero(z.rows(), z.cols());
    for (size_t i = 0; i < ex.targets.size(); ++i) {
      dz.row(ex.targets[i].row) += dzt.row(i);
    }
    trunk_.Backward(layout_, params_, tape, dz, grad);
  }
  return total * inv_count;
}

void Generator::Save(const std::string& path) const {
  BinaryWriter w(path);
  w.Magic(kMagic, kFormatVersion);
  w.String(config_.ToHeader());
  w.U64(vocab_size_);
  w.U64(static_cast<uint64_t>(step_count_));
  w.Doubles(params_);
  w.Finish();
}

Generator Generator::Load(const std::string& path, size_t expected_vocab_size) {
  BinaryReader r(path);
  const uint8_t version = r.Magic(kMagic);
  if (version != kFormatVersion) {
    throw Error(ErrorCode::kFormat,
                path + ": unsupported format version " + std::to_string(version));
  }
  const ModelConfig config = ModelConfig::FromHeader(r.String());
  const uint64_t vocab = r.U64();
  if (vocab != expected_vocab_size) {
    throw Error(ErrorCode::kFormat,
                path + ": checkpoint vocabulary size " + std::to_string(vocab) +
                    " does not match " + std::to_string(expected_vocab_size));
  }
  Generator g(config, vocab);
  g.step_count_ = static_cast<int64_t>(r.U64());
  std::vector<double> values = r.Doubles();
  if (values.size() != g.params_.size()) {
    throw Error(ErrorCode::kFormat, path + ": parameter count mismatch");
  }
  g.params_.assign(values.begin(), values.end());
  return g;
}

}  // namespace ogsum::model
