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

#include "ogsum/ogsum.h"

#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "core/error.h"
#include "core/log.h"
#include "core/vocab.h"
#include "decoder/beam_search.h"
#include "eval/rouge.h"
#include "model/generator.h"
#include "pipeline/config.h"
#include "pipeline/io.h"
#include "pipeline/stages.h"
#include "pipeline/synth_corpus.h"
#include "selector/classifier.h"
#include "selector/scoring.h"

struct ogs_config {
  ogsum::pipeline::Config config;
};

struct ogs_vocab {
  ogsum::Vocabulary vocab;
};

struct ogs_generator {
  ogsum::Vocabulary vocab;
  ogsum::model::Generator model;
};

struct ogs_selector {
  ogsum::selector::QualityClassifier clf;
};

namespace {

thread_local std::string g_last_error;

ogs_status Fail(ogs_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
ogs_status Guard(Fn&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const ogsum::Error& e) {
    return Fail(static_cast<ogs_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(OGS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(OGS_INTERNAL, e.what());
  }
}

ogs_status CopyOut(const std::string& s, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (!buf || cap < s.size() + 1) {
    return Fail(OGS_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(s.size() + 1) + " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return OGS_OK;
}

#define OGS_REQUIRE(cond, what)                                   \
  do {                                                            \
    if (!(cond)) return Fail(OGS_INVALID_ARGUMENT, what);         \
  } while (0)

ogsum::TokenSeq EncodeSource(const ogs_generator* gen, const char* source) {
  ogsum::TokenSeq ids = gen->vocab.Encode(source);
  const size_t max = gen->model.config().max_src_len;
  if (ids.size() > max) ids.resize(max);
  if (ids.empty()) throw ogsum::Error(ogsum::ErrorCode::kInvalidArgument, "empty source");
  return ids;
}

template <typename Stage>
ogs_status RunStage(const ogs_config* config, Stage stage) {
  OGS_REQUIRE(config, "config is NULL");
  return Guard([&] {
    const auto resolved = ogsum::pipeline::Resolve(config->config);
    stage(resolved);
    return OGS_OK;
  });
}

ogs_log_fn g_log_fn = nullptr;
void* g_log_user = nullptr;

}  // namespace

extern "C" {

const char* ogs_version(void) { return "1.0.0"; }

const char* ogs_status_name(ogs_status status) {
  switch (status) {
    case OGS_OK: return "ok";
    case OGS_INVALID_ARGUMENT: return "invalid argument";
    case OGS_IO: return "i/o error";
    case OGS_FORMAT: return "format error";
    case OGS_OUT_OF_RANGE: return "out of range";
    case OGS_NUMERIC: return "numeric error";
    case OGS_STAGE: return "stage failure";
    case OGS_INTERNAL: return "internal error";
    case OGS_BUFFER_TOO_SMALL: return "buffer too small";
  }
  return "unknown";
}

const char* ogs_last_error(void) { return g_last_error.c_str(); }

void ogs_set_log_callback(ogs_log_fn fn, void* user) {
  g_log_fn = fn;
  g_log_user = user;
  if (!fn) {
    ogsum::SetLogSink(ogsum::DefaultLogSink());
    return;
  }
  ogsum::SetLogSink([fn, user](ogsum::LogLevel level, const std::string& msg) {
    fn(level == ogsum::LogLevel::kWarning ? 1 : 0, msg.c_str(), user);
  });
}

void ogs_set_log_quiet(int quiet) {
  if (quiet) {
    ogsum::SetLogSink({});
  } else {
    ogs_set_log_callback(g_log_fn, g_log_user);
  }
}

ogs_status ogs_config_new(ogs_config** out) {
  OGS_REQUIRE(out, "out is NULL");
  return Guard([&] {
    *out = new ogs_config{};
    return OGS_OK;
  });
}

ogs_status ogs_config_load(const char* path, ogs_config** out) {
  OGS_REQUIRE(path && out, "path and out must be non-NULL");
  return Guard([&] {
    auto c = std::make_unique<ogs_config>();
    c->config = ogsum::pipeline::Config::Load(path);
    *out = c.release();
    return OGS_OK;
  });
}

ogs_status ogs_config_set(ogs_config* config, const char* key, const char* value) {
  OGS_REQUIRE(config && key && value, "config, key and value must be non-NULL");
  return Guard([&] {
    config->config.Set(key, value);
    return OGS_OK;
  });
}

ogs_status ogs_config_override(ogs_config* config, const char* assignment) {
  OGS_REQUIRE(config && assignment, "config and assignment must be non-NULL");
  return Guard([&] {
    config->config.Override(assignment);
    return OGS_OK;
  });
}

ogs_status ogs_config_get(const ogs_config* config, const char* key, char* buf,
                          size_t cap, size_t* needed) {
  OGS_REQUIRE(config && key, "config and key must be non-NULL");
  return Guard([&] { return CopyOut(config->config.Get(key), buf, cap, needed); });
}

ogs_status ogs_config_snapshot(const ogs_config* config, char* buf, size_t cap,
                               size_t* needed) {
  OGS_REQUIRE(config, "config is NULL");
  return Guard([&] { return CopyOut(config->config.Snapshot(), buf, cap, needed); });
}

ogs_status ogs_config_validate(const ogs_config* config) {
  return RunStage(config, [](const ogsum::pipeline::PipelineConfig&) {});
}

void ogs_config_free(ogs_config* config) { delete config; }

ogs_status ogs_stage_train_generator(const ogs_config* config) {
  return RunStage(config, ogsum::pipeline::TrainGeneratorStage);
}

ogs_status ogs_stage_generate(const ogs_config* config) {
  return RunStage(config, ogsum::pipeline::GenerateStage);
}

ogs_status ogs_stage_build_corruptions(const ogs_config* config) {
  return RunStage(config, ogsum::pipeline::BuildCorruptionsStage);
}

ogs_status ogs_stage_train_selector(const ogs_config* config) {
  return RunStage(config, ogsum::pipeline::TrainSelectorStage);
}

ogs_status ogs_stage_select(const ogs_config* config, const char* modes) {
  using ogsum::selector::SelectMode;
  return RunStage(config, [&](const ogsum::pipeline::PipelineConfig& cfg) {
    std::vector<SelectMode> list;
    if (modes && *modes) {
      std::stringstream ss(modes);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!item.empty()) list.push_back(ogsum::selector::ModeFromName(item));
      }
    }
    if (list.empty()) {
      list = {SelectMode::kBestQuality, SelectMode::kBestLength, SelectMode::kLengthNorm,
              SelectMode::kAverage};
    }
    ogsum::pipeline::SelectStage(cfg, list);
  });
}

ogs_status ogs_stage_evaluate(const ogs_config* config) {
  return RunStage(config, ogsum::pipeline::EvaluateStage);
}

ogs_status ogs_run_pipeline(const ogs_config* config) {
  OGS_REQUIRE(config, "config is NULL");
  return Guard([&] {
    ogsum::pipeline::RunPipeline(config->config);
    return OGS_OK;
  });
}

ogs_status ogs_synth_corpus(size_t n, uint64_t seed, const char* path) {
  OGS_REQUIRE(path, "path is NULL");
  return Guard([&] {
    ogsum::pipeline::WriteTsv(path, ogsum::pipeline::SynthCorpus(n, seed));
    return OGS_OK;
  });
}

ogs_status ogs_vocab_load(const char* path, ogs_vocab** out) {
  OGS_REQUIRE(path && out, "path and out must be non-NULL");
  return Guard([&] {
    *out = new ogs_vocab{ogsum::Vocabulary::Load(path)};
    return OGS_OK;
  });
}

size_t ogs_vocab_size(const ogs_vocab* vocab) { return vocab ? vocab->vocab.size() : 0; }

ogs_status ogs_vocab_encode(const ogs_vocab* vocab, const char* text, int32_t* ids,
                            size_t cap, size_t* count) {
  OGS_REQUIRE(vocab && text && count, "vocab, text and count must be non-NULL");
  return Guard([&] {
    const auto seq = vocab->vocab.Encode(text);
    *count = seq.size();
    if (!ids || cap < seq.size()) {
      return Fail(OGS_BUFFER_TOO_SMALL, "id buffer needs " + std::to_string(seq.size()));
    }
    std::copy(seq.begin(), seq.end(), ids);
    return OGS_OK;
  });
}

ogs_status ogs_vocab_decode(const ogs_vocab* vocab, const int32_t* ids, size_t n,
                            char* buf, size_t cap, size_t* needed) {
  OGS_REQUIRE(vocab && (ids || n == 0), "vocab and ids must be non-NULL");
  return Guard([&] {
    return CopyOut(vocab->vocab.Decode(std::span<const int32_t>(ids, n)), buf, cap, needed);
  });
}

void ogs_vocab_free(ogs_vocab* vocab) { delete vocab; }

ogs_status ogs_generator_load(const char* checkpoint, const ogs_vocab* vocab,
                              ogs_generator** out) {
  OGS_REQUIRE(checkpoint && vocab && out, "checkpoint, vocab and out must be non-NULL");
  return Guard([&] {
    auto model = ogsum::model::Generator::Load(checkpoint, vocab->vocab.size());
    *out = new ogs_generator{vocab->vocab, std::move(model)};
    return OGS_OK;
  });
}

size_t ogs_generator_max_length(const ogs_generator* gen) {
  return gen ? gen->model.config().max_tgt_len : 0;
}

ogs_status ogs_generator_decode(const ogs_generator* gen, const char* source,
                                size_t length, size_t beam, int32_t* tokens,
                                int32_t* order, double* score) {
  OGS_REQUIRE(gen && source && tokens && order && score,
              "generator, source and outputs must be non-NULL");
  return Guard([&] {
    const auto src = EncodeSource(gen, source);
    const ogsum::Hypothesis h = ogsum::decoder::PosAwareBeam(gen->model, src, {beam, length});
    std::copy(h.tokens.begin(), h.tokens.end(), tokens);
    std::copy(h.order.begin(), h.order.end(), order);
    *score = h.score;
    return OGS_OK;
  });
}

ogs_status ogs_generator_predict_length(const ogs_generator* gen, const char* source,
                                        size_t* length, int* truncated) {
  OGS_REQUIRE(gen && source && length, "generator, source and length must be non-NULL");
  return Guard([&] {
    const auto src = EncodeSource(gen, source);
    const auto g = ogsum::decoder::GreedyLeftToRight(gen->model, src,
                                                     gen->model.config().max_tgt_len);
    *length = g.predicted_length;
    if (truncated) *truncated = g.truncated ? 1 : 0;
    return OGS_OK;
  });
}

void ogs_generator_free(ogs_generator* gen) { delete gen; }

ogs_status ogs_selector_load(const char* path, ogs_selector** out) {
  OGS_REQUIRE(path && out, "path and out must be non-NULL");
  return Guard([&] {
    *out = new ogs_selector{ogsum::selector::QualityClassifier::Load(path)};
    return OGS_OK;
  });
}

ogs_status ogs_selector_predict(const ogs_selector* sel, const char* source,
                                const char* summary, double* probability) {
  OGS_REQUIRE(sel && source && summary && probability,
              "selector, texts and probability must be non-NULL");
  return Guard([&] {
    *probability = sel->clf.PredictAdmissible(source, summary);
    return OGS_OK;
  });
}

void ogs_selector_free(ogs_selector* sel) { delete sel; }

ogs_status ogs_score_length_norm(double log_likelihood, size_t length, double p,
                                 double* out) {
  OGS_REQUIRE(out, "out is NULL");
  return Guard([&] {
    *out = ogsum::selector::ScoreLengthNorm(log_likelihood, length, p);
    return OGS_OK;
  });
}

double ogs_score_reward(double log_likelihood, size_t length, double predicted_length,
                        double r) {
  return ogsum::selector::ScoreReward(log_likelihood, length, predicted_length, r);
}

ogs_status ogs_rouge_n(const char* candidate, const char* reference, int n,
                       ogs_rouge_score* out) {
  OGS_REQUIRE(candidate && reference && out, "texts and out must be non-NULL");
  return Guard([&] {
    const auto s = ogsum::eval::RougeN(candidate, reference, n);
    *out = {s.precision, s.recall, s.f1};
    return OGS_OK;
  });
}

ogs_status ogs_rouge_l(const char* candidate, const char* reference,
                       ogs_rouge_score* out) {
  OGS_REQUIRE(candidate && reference && out, "texts and out must be non-NULL");
  return Guard([&] {
    const auto s = ogsum::eval::RougeL(candidate, reference);
    *out = {s.precision, s.recall, s.f1};
    return OGS_OK;
  });
}

}  // extern "C"
