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

#include "pipeline/stages.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "json.hpp"

#include "core/error.h"
#include "core/log.h"
#include "core/vocab.h"
#include "corruptor/dataset.h"
#include "decoder/beam_search.h"
#include "eval/report.h"
#include "model/generator.h"
#include "model/training.h"
#include "pipeline/io.h"
#include "pipeline/manifest.h"
#include "selector/classifier.h"

namespace ogsum::pipeline {

namespace {

using nlohmann::json;

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string Quote(const std::string& s) { return json(s).dump(); }

void EnsureOutDir(const PipelineConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + cfg.out_dir);
}

template <typename Fn>
void ForEachJsonLine(const std::string& path, Fn fn) {
  std::istringstream is(ReadFile(path));
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kFormat,
                  path + ": line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

std::vector<int> ParseOrder(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<corruptor::SummaryPair> TestSubset(const PipelineConfig& cfg) {
  auto test = LoadTsv(cfg.test);
  if (cfg.generate_limit > 0 && test.size() > cfg.generate_limit) {
    test.resize(cfg.generate_limit);
  }
  return test;
}

TokenSeq ClippedSource(const Vocabulary& vocab, const std::string& text,
                       size_t max_len) {
  TokenSeq ids = vocab.Encode(text);
  if (ids.size() > max_len) ids.resize(max_len);
  if (ids.empty()) throw Error(ErrorCode::kInvalidArgument, "empty source text");
  return ids;
}

const char* ColumnLabel(selector::SelectMode mode) {
  switch (mode) {
    case selector::SelectMode::kBestQuality: return "Best Quality";
    case selector::SelectMode::kBestLength: return "Best Length";
    case selector::SelectMode::kLengthNorm: return "Length Norm";
    case selector::SelectMode::kAverage: return "Avg";
  }
  return "";
}

}  // namespace

std::string FormatHypothesis(const HypothesisRecord& r) {
  std::string order;
  for (size_t i = 0; i < r.order.size(); ++i) {
    if (i) order += ',';
    order += std::to_string(r.order[i]);
  }
  return "{\"instance_id\":" + std::to_string(r.instance_id) +
         ",\"L\":" + std::to_string(r.length) + ",\"tokens\":" + Quote(r.tokens) +
         ",\"order\":" + Quote(order) + ",\"score\":" + Fixed(r.score, 6) + "}";
}

std::vector<HypothesisRecord> ReadHypotheses(const std::string& path) {
  std::vector<HypothesisRecord> out;
  ForEachJsonLine(path, [&](const json& j) {
    HypothesisRecord r;
    r.instance_id = j.at("instance_id").get<size_t>();
    r.length = j.at("L").get<size_t>();
    r.tokens = j.at("tokens").get<std::string>();
    r.order = ParseOrder(j.at("order").get<std::string>());
    r.score = j.at("score").get<double>();
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<LengthRecord> ReadLengths(const std::string& path) {
  std::vector<LengthRecord> out;
  ForEachJsonLine(path, [&](const json& j) {
    out.push_back({j.at("instance_id").get<size_t>(), j.at("L_pred").get<size_t>(),
                   j.at("truncated").get<bool>()});
  });
  return out;
}

std::vector<SelectionRecord> ReadSelections(const std::string& path) {
  std::vector<SelectionRecord> out;
  ForEachJsonLine(path, [&](const json& j) {
    SelectionRecord r;
    r.instance_id = j.at("instance_id").get<size_t>();
    r.mode = selector::ModeFromName(j.at("mode").get<std::string>());
    const json& c = j.at("chosen_L");
    if (c.is_array()) {
      r.chosen = c.get<std::vector<size_t>>();
    } else {
      r.chosen = {c.get<size_t>()};
    }
    if (j.contains("score")) r.score = j.at("score").get<double>();
    if (j.contains("probability")) r.probability = j.at("probability").get<double>();
    out.push_back(std::move(r));
  });
  return out;
}

std::string ArtifactPath(const PipelineConfig& cfg, const char* name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

void RequireInputs(const PipelineConfig& cfg, const std::vector<std::string>& keys) {
  for (const auto& key : keys) {
    std::string path;
    if (key == "train") path = cfg.train;
    else if (key == "valid") path = cfg.valid;
    else if (key == "test") path = cfg.test;
    else path = ArtifactPath(cfg, key.c_str());
    if (path.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "config: '" + key + "' is not set");
    }
    if (!FileExists(path)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config: input '" + key + "' not found: " + path);
    }
  }
}

void TrainGeneratorStage(const PipelineConfig& cfg) {
  RequireInputs(cfg, {"train"});
  EnsureOutDir(cfg);
  const auto pairs = LoadTsv(cfg.train);
  std::vector<std::string> corpus;
  for (const auto& p : pairs) {
    corpus.push_back(p.source);
    corpus.push_back(p.summary);
  }
  const Vocabulary vocab = Vocabulary::Build(corpus, cfg.vocab_min_count);
  vocab.Save(ArtifactPath(cfg, kVocabFile));

  std::vector<model::TrainingPair> data;
  data.reserve(pairs.size());
  for (const auto& p : pairs) data.push_back({vocab.Encode(p.source), vocab.Encode(p.summary)});

  model::Generator gen(cfg.model, vocab.size());
  LogInfo("generator: " + std::to_string(gen.num_params()) + " parameters, " +
          std::to_string(vocab.size()) + " tokens, " + std::to_string(data.size()) +
          " training pairs");
  std::string log = "epoch\tend_step\tmean_loss\n";
  const model::TrainReport report =
      model::Train(gen, cfg.schedule, data, cfg.training, [&](const model::EpochLog& e) {
        log += std::to_string(e.epoch) + "\t" + std::to_string(e.end_step) + "\t" +
               Fixed(e.mean_loss, 6) + "\n";
        LogInfo("epoch " + std::to_string(e.epoch) + " step " +
                std::to_string(e.end_step) + " loss " + Fixed(e.mean_loss, 4));
      });
  log += "# probe_initial\t" + Fixed(report.initial_probe_loss, 6) + "\n";
  log += "# probe_final\t" + Fixed(report.final_probe_loss, 6) + "\n";
  WriteFile(ArtifactPath(cfg, kGeneratorLog), log);
  gen.Save(ArtifactPath(cfg, kGeneratorFile));
}

void GenerateStage(const PipelineConfig& cfg) {
  RequireInputs(cfg, {"test", kVocabFile, kGeneratorFile});
  EnsureOutDir(cfg);
  const Vocabulary vocab = Vocabulary::Load(ArtifactPath(cfg, kVocabFile));
  const model::Generator gen =
      model::Generator::Load(ArtifactPath(cfg, kGeneratorFile), vocab.size());
  if (cfg.l_max > gen.config().max_tgt_len) {
    throw Error(ErrorCode::kInvalidArgument, "L_max exceeds the checkpoint's max_tgt_len");
  }
  const auto test = TestSubset(cfg);
  std::string hyps, lengths;
  for (size_t i = 0; i < test.size(); ++i) {
    const TokenSeq src = ClippedSource(vocab, test[i].source, gen.config().max_src_len);
    const decoder::GeneratorScorer scorer(gen, src);
    for (size_t len = cfg.l_min; len <= cfg.l_max; ++len) {
      const Hypothesis h = decoder::PosAwareBeam(scorer, {cfg.beam_k, len});
      hyps += FormatHypothesis({i, len, vocab.Decode(h.tokens), h.order, h.score}) + "\n";
    }
    const auto g = decoder::GreedyLeftToRight(scorer, gen.config().max_tgt_len);
    lengths += "{\"instance_id\":" + std::to_string(i) +
               ",\"L_pred\":" + std::to_string(g.predicted_length) +
               ",\"truncated\":" + (g.truncated ? "true" : "false") + "}\n";
    if ((i + 1) % 25 == 0 || i + 1 == test.size()) {
      LogInfo("decoded " + std::to_string(i + 1) + "/" + std::to_string(test.size()));
    }
  }
  WriteFile(ArtifactPath(cfg, kHypothesesFile), hyps);
  WriteFile(ArtifactPath(cfg, kLengthsFile), lengths);
}

void BuildCorruptionsStage(const PipelineConfig& cfg) {
  RequireInputs(cfg, {"train", "valid"});
  EnsureOutDir(cfg);
  const auto train = LoadTsv(cfg.train);
  const auto data = corruptor::BuildSelectorDataset(train, cfg.corrupt_n, cfg.StageSeed(3));
  corruptor::WriteDatasetTsv(ArtifactPath(cfg, kCorruptionsFile), data);
  std::vector<corruptor::CorruptionInstance> heldout;
  if (cfg.heldout_n > 0) {
    const auto valid = LoadTsv(cfg.valid);
    heldout = corruptor::BuildSelectorDataset(valid, cfg.heldout_n, cfg.StageSeed(4));
  }
  corruptor::WriteDatasetTsv(ArtifactPath(cfg, kHeldoutFile), heldout);
}

void TrainSelectorStage(const PipelineConfig& cfg) {
  RequireInputs(cfg, {kCorruptionsFile, kHeldoutFile});
  const auto train = corruptor::ReadDatasetTsv(ArtifactPath(cfg, kCorruptionsFile));
  const auto heldout = corruptor::ReadDatasetTsv(ArtifactPath(cfg, kHeldoutFile));
  std::string log = "epoch\tmean_loss\n";
  selector::ClassifierReport report;
  const auto clf = selector::TrainQualitySelector(
      train, heldout, cfg.selector, cfg.selector_training, &report,
      [&](size_t epoch, double loss) {
        log += std::to_string(epoch) + "\t" + Fixed(loss, 6) + "\n";
        LogInfo("selector epoch " + std::to_string(epoch) + " loss " + Fixed(loss, 4));
      });
  log += "# heldout_accuracy\t" + Fixed(report.heldout_accuracy, 6) + "\n";
  log += "# mean_prob_positive\t" + Fixed(report.mean_prob_positive, 6) + "\n";
  log += "# mean_prob_negative\t" + Fixed(report.mean_prob_negative, 6) + "\n";
  for (const auto& [kind, acc] : report.accuracy_by_kind) {
    log += "# accuracy." + kind + "\t" + Fixed(acc, 6) + "\n";
  }
  LogInfo("selector held-out accuracy " + Fixed(report.heldout_accuracy, 4));
  WriteFile(ArtifactPath(cfg, kSelectorLog), log);
  clf.Save(ArtifactPath(cfg, kSelectorFile));
}

void SelectStage(const PipelineConfig& cfg,
                 const std::vector<selector::SelectMode>& modes) {
  RequireInputs(cfg, {"test", kVocabFile, kHypothesesFile, kLengthsFile});
  bool needs_clf = false;
  for (auto m : modes) needs_clf |= m == selector::SelectMode::kBestQuality;
  if (needs_clf) RequireInputs(cfg, {kSelectorFile});
  const auto test = TestSubset(cfg);
  const Vocabulary vocab = Vocabulary::Load(ArtifactPath(cfg, kVocabFile));
  const auto hyps = ReadHypotheses(ArtifactPath(cfg, kHypothesesFile));
  const auto lengths = ReadLengths(ArtifactPath(cfg, kLengthsFile));
  std::optional<selector::QualityClassifier> clf;
  if (needs_clf) clf = selector::QualityClassifier::Load(ArtifactPath(cfg, kSelectorFile));

  std::vector<std::vector<selector::Candidate>> cands(test.size());
  for (const auto& h : hyps) {
    if (h.instance_id >= test.size()) {
      throw Error(ErrorCode::kFormat, "hypothesis for unknown instance " +
                                          std::to_string(h.instance_id));
    }
    selector::Candidate c;
    c.text = h.tokens;
    c.tokens = vocab.Encode(h.tokens);
    c.score = h.score;
    cands[h.instance_id].push_back(std::move(c));
  }
  std::vector<double> l_pred(test.size(), -1.0);
  for (const auto& l : lengths) {
    if (l.instance_id < test.size()) l_pred[l.instance_id] = static_cast<double>(l.predicted_length);
  }

  std::string out;
  for (size_t i = 0; i < test.size(); ++i) {
    if (cands[i].empty()) {
      throw Error(ErrorCode::kFormat, "no hypotheses for instance " + std::to_string(i));
    }
    if (l_pred[i] < 0) {
      throw Error(ErrorCode::kFormat, "no predicted length for instance " + std::to_string(i));
    }
    selector::SelectContext ctx;
    ctx.reward = selector::LengthRewardConfig{cfg.reward_r, cfg.reward_p, l_pred[i]};
    if (clf) {
      const std::string& source = test[i].source;
      ctx.quality = [&](const std::string& text) { return clf->PredictAdmissible(source, text); };
    }
    for (auto mode : modes) {
      const selector::Selection sel = selector::Select(cands[i], mode, ctx);
      std::string rec = "{\"instance_id\":" + std::to_string(i) + ",\"mode\":" +
                        Quote(std::string(selector::ModeName(mode))) + ",\"chosen_L\":";
      if (mode == selector::SelectMode::kAverage) {
        rec += "[";
        for (size_t k = 0; k < sel.chosen.size(); ++k) {
          if (k) rec += ",";
          rec += std::to_string(cands[i][sel.chosen[k]].tokens.size());
        }
        rec += "]";
      } else {
        rec += std::to_string(cands[i][sel.chosen[0]].tokens.size()) +
               ",\"score\":" + Fixed(sel.score, 6);
        if (sel.probability) rec += ",\"probability\":" + Fixed(*sel.probability, 6);
      }
      out += rec + "}\n";
    }
  }
  WriteFile(ArtifactPath(cfg, kSelectionsFile), out);
}

void EvaluateStage(const PipelineConfig& cfg) {
  RequireInputs(cfg, {"test", kHypothesesFile, kSelectionsFile});
  const auto test = TestSubset(cfg);
  eval::ReportInput in;
  in.l_min = cfg.l_min;
  in.l_max = cfg.l_max;
  in.hypotheses.resize(test.size());
  for (const auto& p : test) in.references.push_back(p.summary);
  for (const auto& h : ReadHypotheses(ArtifactPath(cfg, kHypothesesFile))) {
    if (h.instance_id < test.size()) in.hypotheses[h.instance_id][h.length] = h.tokens;
  }
  std::map<selector::SelectMode, std::vector<size_t>> chosen;
  for (const auto& s : ReadSelections(ArtifactPath(cfg, kSelectionsFile))) {
    if (s.mode == selector::SelectMode::kAverage || s.instance_id >= test.size()) continue;
    auto& v = chosen[s.mode];
    v.resize(test.size(), 0);
    v[s.instance_id] = s.chosen.at(0);
  }
  for (auto mode : {selector::SelectMode::kBestQuality, selector::SelectMode::kBestLength,
                    selector::SelectMode::kLengthNorm}) {
    auto it = chosen.find(mode);
    if (it != chosen.end()) in.selections.emplace_back(ColumnLabel(mode), it->second);
  }
  const eval::ReportTable table = eval::PerLengthReport(in);
  WriteFile(ArtifactPath(cfg, kReportText), eval::FormatTable(table));
  WriteFile(ArtifactPath(cfg, kReportJsonl), eval::FormatJsonl(table));
}

void RunPipeline(const Config& config) {
  const PipelineConfig cfg = Resolve(config);
  RequireInputs(cfg, {"train", "valid", "test"});
  EnsureOutDir(cfg);
  const std::vector<std::pair<const char*, std::function<void()>>> stages = {
      {"train-generator", [&] { TrainGeneratorStage(cfg); }},
      {"generate", [&] { GenerateStage(cfg); }},
      {"build-corruptions", [&] { BuildCorruptionsStage(cfg); }},
      {"train-selector", [&] { TrainSelectorStage(cfg); }},
      {"select",
       [&] {
         SelectStage(cfg, {selector::SelectMode::kBestQuality, selector::SelectMode::kBestLength,
                           selector::SelectMode::kLengthNorm, selector::SelectMode::kAverage});
       }},
      {"evaluate", [&] { EvaluateStage(cfg); }},
  };
  for (const auto& [name, run] : stages) {
    LogInfo(std::string("stage ") + name);
    try {
      run();
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kStage, std::string("stage ") + name + " failed: " + e.what());
    }
  }
  WriteManifest(config, cfg);
}

}  // namespace ogsum::pipeline
