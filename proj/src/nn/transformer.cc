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

#include "nn/transformer.h"

#include <cmath>
#include <limits>

#include "core/error.h"

namespace ogsum::nn {

namespace {

constexpr double kLayerNormEps = 1e-5;
constexpr double kGeluC = 0.7978845608028654;  // sqrt(2 / pi)

void AddRow(Mat& m, ConstRowMap row) { m.rowwise() += row; }

// Multi-head scaled dot-product attention. Row i of q sees keys [0, limit[i]).
Mat Attend(const Mat& q, const Mat& k, const Mat& v, size_t heads,
           const std::vector<size_t>& limit, std::vector<Mat>* probs) {
  const Eigen::Index dh = q.cols() / static_cast<Eigen::Index>(heads);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  Mat ctx(q.rows(), q.cols());
  if (probs) probs->resize(heads);
  for (size_t h = 0; h < heads; ++h) {
    const Eigen::Index c0 = static_cast<Eigen::Index>(h) * dh;
    Mat s = (q.middleCols(c0, dh) * k.middleCols(c0, dh).transpose()) * scale;
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      const Eigen::Index lim = static_cast<Eigen::Index>(limit[i]);
      const double mx = s.row(i).head(lim).maxCoeff();
      double z = 0.0;
      for (Eigen::Index j = 0; j < lim; ++j) {
        const double e = std::exp(s(i, j) - mx);
        s(i, j) = e;
        z += e;
      }
      s.row(i).head(lim) /= z;
      s.row(i).tail(s.cols() - lim).setZero();
    }
    ctx.middleCols(c0, dh).noalias() = s * v.middleCols(c0, dh);
    if (probs) (*probs)[h] = std::move(s);
  }
  return ctx;
}

}  // namespace

void LayerNormForward(const Mat& x, ConstRowMap gain, ConstRowMap bias,
                      Mat* xhat, ColVec* inv_std, Mat* y) {
  const Eigen::Index n = x.cols();
  xhat->resize(x.rows(), n);
  inv_std->resize(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double mu = x.row(i).mean();
    const double var = (x.row(i).array() - mu).square().sum() / n;
    const double inv = 1.0 / std::sqrt(var + kLayerNormEps);
    (*inv_std)(i) = inv;
    xhat->row(i) = (x.row(i).array() - mu) * inv;
  }
  *y = (xhat->array().rowwise() * gain.array()).rowwise() + bias.array();
}

Mat LayerNormBackward(const Mat& dy, const Mat& xhat, const ColVec& inv_std,
                      ConstRowMap gain, RowMap d_gain, RowMap d_bias) {
  d_gain += (dy.array() * xhat.array()).colwise().sum().matrix();
  d_bias += dy.colwise().sum();
  const Mat dxhat = dy.array().rowwise() * gain.array();
  const double n = static_cast<double>(dy.cols());
  Mat dx(dy.rows(), dy.cols());
  for (Eigen::Index i = 0; i < dy.rows(); ++i) {
    const double m1 = dxhat.row(i).sum() / n;
    const double m2 = dxhat.row(i).dot(xhat.row(i)) / n;
    dx.row(i) =
        (dxhat.row(i).array() - m1 - xhat.row(i).array() * m2) * inv_std(i);
  }
  return dx;
}

double Gelu(double x) {
  return 0.5 * x * (1.0 + std::tanh(kGeluC * (x + 0.044715 * x * x * x)));
}

double GeluGrad(double x) {
  const double t = std::tanh(kGeluC * (x + 0.044715 * x * x * x));
  return 0.5 * (1.0 + t) +
         0.5 * x * (1.0 - t * t) * kGeluC * (1.0 + 3.0 * 0.044715 * x * x);
}

Mat LogSoftmaxRows(const Mat& logits) {
  Mat out(logits.rows(), logits.cols());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    const double lse =
        mx + std::log((logits.row(i).array() - mx).exp().sum());
    out.row(i) = logits.row(i).array() - lse;
  }
  return out;
}

TransformerTrunk::TransformerTrunk(const TrunkConfig& config,
                                   const std::string& prefix,
                                   ParamLayout& layout)
    : config_(config) {
  if (config.hidden == 0 || config.heads == 0 ||
      config.hidden % config.heads != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "hidden must be a positive multiple of heads");
  }
  const size_t d = config.hidden;
  const size_t f = config.ffn;
  tok_emb_ = layout.Add(prefix + "tok_emb", config.vocab, d, true);
  pos_emb_ = layout.Add(prefix + "pos_emb", config.positions, d, true);
  for (size_t b = 0; b < config.blocks; ++b) {
    const std::string p = prefix + "block" + std::to_string(b) + ".";
    BlockSlots s;
    s.ln1_g = layout.Add(p + "ln1.gain", 1, d, false);
    s.ln1_b = layout.Add(p + "ln1.bias", 1, d, false);
    s.wq = layout.Add(p + "attn.wq", d, d, true);
    s.bq = layout.Add(p + "attn.bq", 1, d, false);
    s.wk = layout.Add(p + "attn.wk", d, d, true);
    s.bk = layout.Add(p + "attn.bk", 1, d, false);
    s.wv = layout.Add(p + "attn.wv", d, d, true);
    s.bv = layout.Add(p + "attn.bv", 1, d, false);
    s.wo = layout.Add(p + "attn.wo", d, d, true);
    s.bo = layout.Add(p + "attn.bo", 1, d, false);
    s.ln2_g = layout.Add(p + "ln2.gain", 1, d, false);
    s.ln2_b = layout.Add(p + "ln2.bias", 1, d, false);
    s.w1 = layout.Add(p + "ffn.w1", d, f, true);
    s.b1 = layout.Add(p + "ffn.b1", 1, f, false);
    s.w2 = layout.Add(p + "ffn.w2", f, d, true);
    s.b2 = layout.Add(p + "ffn.b2", 1, d, false);
    blocks_.push_back(s);
  }
  lnf_g_ = layout.Add(prefix + "lnf.gain", 1, config.hidden, false);
  lnf_b_ = layout.Add(prefix + "lnf.bias", 1, config.hidden, false);
}

void TransformerTrunk::Init(const ParamLayout& layout,
                            std::span<double> params, Rng& rng) const {
  auto fill = [&](size_t slot, double stddev) {
    auto m = layout.Map(params, slot);
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      m.data()[i] = stddev * rng.Normal();
    }
  };
  auto constant = [&](size_t slot, double value) {
    layout.Map(params, slot).setConstant(value);
  };
  const double d = static_cast<double>(config_.hidden);
  const double f = static_cast<double>(config_.ffn);
  const double residual =
      1.0 / std::sqrt(2.0 * static_cast<double>(config_.blocks));
  fill(tok_emb_, 0.1);
  fill(pos_emb_, 0.1);
  for (const auto& s : blocks_) {
    constant(s.ln1_g, 1.0);
    constant(s.ln1_b, 0.0);
    constant(s.ln2_g, 1.0);
    constant(s.ln2_b, 0.0);
    fill(s.wq, 1.0 / std::sqrt(d));
    fill(s.wk, 1.0 / std::sqrt(d));
    fill(s.wv, 1.0 / std::sqrt(d));
    fill(s.wo, residual / std::sqrt(d));
    fill(s.w1, 1.0 / std::sqrt(d));
    fill(s.w2, residual / std::sqrt(f));
    for (size_t b : {s.bq, s.bk, s.bv, s.bo, s.b1, s.b2}) constant(b, 0.0);
  }
  constant(lnf_g_, 1.0);
  constant(lnf_b_, 0.0);
}

Mat TransformerTrunk::Embed(const ParamLayout& layout,
                            std::span<const double> params,
                            std::span<const TokenId> ids,
                            std::span<const int> positions) const {
  if (ids.size() != positions.size()) {
    throw Error(ErrorCode::kInternal, "ids/positions size mismatch");
  }
  const auto tok = layout.Map(params, tok_emb_);
  const auto pos = layout.Map(params, pos_emb_);
  Mat x(ids.size(), config_.hidden);
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] < 0 || static_cast<size_t>(ids[i]) >= config_.vocab) {
      throw Error(ErrorCode::kOutOfRange, "token id out of range");
    }
    if (positions[i] < 0 ||
        static_cast<size_t>(positions[i]) >= config_.positions) {
      throw Error(ErrorCode::kOutOfRange, "sequence too long");
    }
    x.row(i) = tok.row(ids[i]) + pos.row(positions[i]);
  }
  return x;
}

Mat TransformerTrunk::Forward(const ParamLayout& layout,
                              std::span<const double> params,
                              std::span<const TokenId> ids,
                              std::span<const int> positions, size_t n_prefix,
                              TrunkTape* tape) const {
  const size_t t = ids.size();
  Mat x = Embed(layout, params, ids, positions);
  std::vector<size_t> limit(t);
  for (size_t i = 0; i < t; ++i) limit[i] = i < n_prefix ? n_prefix : t;

  TrunkTape local;
  TrunkTape& tp = tape ? *tape : local;
  tp.ids.assign(ids.begin(), ids.end());
  tp.positions.assign(positions.begin(), positions.end());
  tp.n_prefix = n_prefix;
  tp.blocks.assign(blocks_.size(), BlockTape{});

  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    const auto& s = blocks_[bi];
    BlockTape& bt = tp.blocks[bi];
    bt.x = x;
    LayerNormForward(x, layout.Row(params, s.ln1_g), layout.Row(params, s.ln1_b),
                     &bt.xhat1, &bt.inv1, &bt.a);
    bt.q.noalias() = bt.a * layout.Map(params, s.wq);
    AddRow(bt.q, layout.Row(params, s.bq));
    bt.k.noalias() = bt.a * layout.Map(params, s.wk);
    AddRow(bt.k, layout.Row(params, s.bk));
    bt.v.noalias() = bt.a * layout.Map(params, s.wv);
    AddRow(bt.v, layout.Row(params, s.bv));
    bt.ctx = Attend(bt.q, bt.k, bt.v, config_.heads, limit,
                    tape ? &bt.probs : nullptr);
    bt.x1 = x;
    bt.x1.noalias() += bt.ctx * layout.Map(params, s.wo);
    AddRow(bt.x1, layout.Row(params, s.bo));
    LayerNormForward(bt.x1, layout.Row(params, s.ln2_g),
                     layout.Row(params, s.ln2_b), &bt.xhat2, &bt.inv2, &bt.b);
    bt.hpre.noalias() = bt.b * layout.Map(params, s.w1);
    AddRow(bt.hpre, layout.Row(params, s.b1));
    bt.g = bt.hpre.unaryExpr([](double v) { return Gelu(v); });
    x = bt.x1;
    x.noalias() += bt.g * layout.Map(params, s.w2);
    AddRow(x, layout.Row(params, s.b2));
  }
  tp.x_last = x;
  Mat out;
  LayerNormForward(x, layout.Row(params, lnf_g_), layout.Row(params, lnf_b_),
                   &tp.xhatf, &tp.invf, &out);
  if (!tape) tp = TrunkTape{};
  return out;
}

void TransformerTrunk::Backward(const ParamLayout& layout,
                                std::span<const double> params,
                                const TrunkTape& tape, const Mat& d_out,
                                std::span<double> grad) const {
  Mat dx = LayerNormBackward(d_out, tape.xhatf, tape.invf,
                             layout.Row(params, lnf_g_),
                             layout.Row(grad, lnf_g_), layout.Row(grad, lnf_b_));
  const Eigen::Index dh =
      static_cast<Eigen::Index>(config_.hidden / config_.heads);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  for (size_t bi = blocks_.size(); bi-- > 0;) {
    const auto& s = blocks_[bi];
    const BlockTape& bt = tape.blocks[bi];

    // Feed-forward sublayer: x2 = x1 + gelu(LN2(x1) W1 + b1) W2 + b2.
    layout.Map(grad, s.w2).noalias() += bt.g.transpose() * dx;
    layout.Row(grad, s.b2) += dx.colwise().sum();
    Mat dg = dx * layout.Map(params, s.w2).transpose();
    Mat dh_pre = dg.array() * bt.hpre.unaryExpr([](double v) {
      return GeluGrad(v);
    }).array();
    layout.Map(grad, s.w1).noalias() += bt.b.transpose() * dh_pre;
    layout.Row(grad, s.b1) += dh_pre.colwise().sum();
    Mat db = dh_pre * layout.Map(params, s.w1).transpose();
    Mat dx1 = dx + LayerNormBackward(db, bt.xhat2, bt.inv2,
                                     layout.Row(params, s.ln2_g),
                                     layout.Row(grad, s.ln2_g),
                                     layout.Row(grad, s.ln2_b));

    // Attention sublayer: x1 = x + Attn(LN1(x)) Wo + bo.
    layout.Map(grad, s.wo).noalias() += bt.ctx.transpose() * dx1;
    layout.Row(grad, s.bo) += dx1.colwise().sum();
    Mat dctx = dx1 * layout.Map(params, s.wo).transpose();
    Mat dq(bt.q.rows(), bt.q.cols());
    Mat dk(bt.k.rows(), bt.k.cols());
    Mat dv(bt.v.rows(), bt.v.cols());
    for (size_t h = 0; h < config_.heads; ++h) {
      const Eigen::Index c0 = static_cast<Eigen::Index>(h) * dh;
      const Mat& p = bt.probs[h];
      const Mat dctx_h = dctx.middleCols(c0, dh);
      dv.middleCols(c0, dh).noalias() = p.transpose() * dctx_h;
      Mat dp = dctx_h * bt.v.middleCols(c0, dh).transpose();
      const ColVec row_dot = (dp.array() * p.array()).rowwise().sum();
      Mat ds = p.array() * (dp.colwise() - row_dot).array();
      dq.middleCols(c0, dh).noalias() = (ds * bt.k.middleCols(c0, dh)) * scale;
      dk.middleCols(c0, dh).noalias() =
          (ds.transpose() * bt.q.middleCols(c0, dh)) * scale;
    }
    layout.Map(grad, s.wq).noalias() += bt.a.transpose() * dq;
    layout.Row(grad, s.bq) += dq.colwise().sum();
    layout.Map(grad, s.wk).noalias() += bt.a.transpose() * dk;
    layout.Row(grad, s.bk) += dk.colwise().sum();
    layout.Map(grad, s.wv).noalias() += bt.a.transpose() * dv;
    layout.Row(grad, s.bv) += dv.colwise().sum();
    Mat da = dq * layout.Map(params, s.wq).transpose();
    da.noalias() += dk * layout.Map(params, s.wk).transpose();
    da.noalias() += dv * layout.Map(params, s.wv).transpose();
    dx = dx1 + LayerNormBackward(da, bt.xhat1, bt.inv1,
                                 layout.Row(params, s.ln1_g),
                                 layout.Row(grad, s.ln1_g),
                                 layout.Row(grad, s.ln1_b));
  }

  auto d_tok = layout.Map(grad, tok_emb_);
  auto d_pos = layout.Map(grad, pos_emb_);
  for (size_t i = 0; i < tape.ids.size(); ++i) {
    d_tok.row(tape.ids[i]) += dx.row(i);
    d_pos.row(tape.positions[i]) += dx.row(i);
  }
}

PrefixCache TransformerTrunk::EncodePrefix(const ParamLayout& layout,
                                           std::span<const double> params,
                                           std::span<const TokenId> ids,
                                           std::span<const int> positions) const {
  PrefixCache cache;
  cache.rows = ids.size();
  Mat x = Embed(layout, params, ids, positions);
  const std::vector<size_t> limit(ids.size(), ids.size());
  Mat xhat, a, b, x1, hpre;
  ColVec inv;
  for (const auto& s : blocks_) {
    LayerNormForward(x, layout.Row(params, s.ln1_g),
                     layout.Row(params, s.ln1_b), &xhat, &inv, &a);
    Mat q = a * layout.Map(params, s.wq);
    AddRow(q, layout.Row(params, s.bq));
    Mat k = a * layout.Map(params, s.wk);
    AddRow(k, layout.Row(params, s.bk));
    Mat v = a * layout.Map(params, s.wv);
    AddRow(v, layout.Row(params, s.bv));
    const Mat ctx = Attend(q, k, v, config_.heads, limit, nullptr);
    cache.keys.push_back(std::move(k));
    cache.values.push_back(std::move(v));
    x1 = x;
    x1.noalias() += ctx * layout.Map(params, s.wo);
    AddRow(x1, layout.Row(params, s.bo));
    LayerNormForward(x1, layout.Row(params, s.ln2_g),
                     layout.Row(params, s.ln2_b), &xhat, &inv, &b);
    hpre.noalias() = b * layout.Map(params, s.w1);
    AddRow(hpre, layout.Row(params, s.b1));
    x = x1;
    x.noalias() += hpre.unaryExpr([](double v) { return Gelu(v); }) *
                   layout.Map(params, s.w2);
    AddRow(x, layout.Row(params, s.b2));
  }
  return cache;
}

Mat TransformerTrunk::ForwardSuffix(const ParamLayout& layout,
                                    std::span<const double> params,
                                    const PrefixCache& cache,
                                    std::span<const TokenId> ids,
                                    std::span<const int> positions) const {
  Mat x = Embed(layout, params, ids, positions);
  const size_t total = cache.rows + ids.size();
  const std::vector<size_t> limit(ids.size(), total);
  Mat xhat, a, b, x1, hpre;
  ColVec inv;
  Mat keys(total, config_.hidden), values(total, config_.hidden);
  for (size_t bi = 0; bi < blocks_.size(); ++bi) {
    const auto& s = blocks_[bi];
    LayerNormForward(x, layout.Row(params, s.ln1_g),
                     layout.Row(params, s.ln1_b), &xhat, &inv, &a);
    Mat q = a * layout.Map(params, s.wq);
    AddRow(q, layout.Row(params, s.bq));
    keys.topRows(cache.rows) = cache.keys[bi];
    keys.bottomRows(ids.size()).noalias() = a * layout.Map(params, s.wk);
    keys.bottomRows(ids.size()).rowwise() += layout.Row(params, s.bk);
    values.topRows(cache.rows) = cache.values[bi];
    values.bottomRows(ids.size()).noalias() = a * layout.Map(params, s.wv);
    values.bottomRows(ids.size()).rowwise() += layout.Row(params, s.bv);
    const Mat ctx = Attend(q, keys, values, config_.heads, limit, nullptr);
    x1 = x;
    x1.noalias() += ctx * layout.Map(params, s.wo);
    AddRow(x1, layout.Row(params, s.bo));
    LayerNormForward(x1, layout.Row(params, s.ln2_g),
                     layout.Row(params, s.ln2_b), &xhat, &inv, &b);
    hpre.noalias() = b * layout.Map(params, s.w1);
    AddRow(hpre, layout.Row(params, s.b1));
    x = x1;
    x.noalias() += hpre.unaryExpr([](double v) { return Gelu(v); }) *
                   layout.Map(params, s.w2);
    AddRow(x, layout.Row(params, s.b2));
  }
  Mat out;
  LayerNormForward(x, layout.Row(params, lnf_g_), layout.Row(params, lnf_b_),
                   &xhat, &inv, &out);
  return out;
}

}  // namespace ogsum::nn
