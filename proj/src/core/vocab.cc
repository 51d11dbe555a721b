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

#include "core/vocab.h"

#include <algorithm>
#include <fstream>
#include <map>

#include "core/error.h"

namespace ogsum {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !IsSpace(text[j])) ++j;
    if (j > i) words.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

std::string JoinWords(std::span<const std::string> words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

const std::vector<std::string>& Vocabulary::SpecialNames() {
  static const std::vector<std::string> names = {"[MASK]", "[SEP]", "[PAD]",
                                                 "[UNK]"};
  return names;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  if (tokens_.size() < static_cast<size_t>(kNumSpecials) + 1) {
    throw Error(ErrorCode::kFormat,
                "vocabulary needs the four specials and at least one token");
  }
  for (TokenId i = 0; i < kNumSpecials; ++i) {
    if (tokens_[i] != SpecialNames()[i]) {
      throw Error(ErrorCode::kFormat, "special token " + SpecialNames()[i] +
                                          " must have id " + std::to_string(i));
    }
  }
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty() ||
        std::any_of(tokens_[i].begin(), tokens_[i].end(), IsSpace)) {
      throw Error(ErrorCode::kFormat,
                  "token " + std::to_string(i) + " is empty or has whitespace");
    }
    if (!index_.emplace(tokens_[i], static_cast<TokenId>(i)).second) {
      throw Error(ErrorCode::kFormat, "duplicate token '" + tokens_[i] + "'");
    }
  }
}

Vocabulary Vocabulary::Build(std::span<const std::string> corpus,
                             int min_count) {
  std::map<std::string, int64_t> counts;
  for (const auto& line : corpus) {
    for (auto& w : SplitWords(line)) ++counts[w];
  }
  for (const auto& name : SpecialNames()) counts.erase(name);
  if (counts.empty()) throw Error(ErrorCode::kInvalidArgument, "empty corpus");

  std::vector<std::pair<std::string, int64_t>> kept;
  for (auto& [w, c] : counts) {
    if (c >= min_count) kept.emplace_back(w, c);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no token reaches min_count " + std::to_string(min_count));
  }
  // counts is lexicographically ordered already; stable sort keeps that as
  // the tie-break.
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::vector<std::string> tokens = SpecialNames();
  for (auto& [w, c] : kept) tokens.push_back(w);
  return Vocabulary(std::move(tokens));
}

Vocabulary Vocabulary::FromTokens(std::vector<std::string> tokens) {
  return Vocabulary(std::move(tokens));
}

Vocabulary Vocabulary::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open vocabulary " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  return Vocabulary(std::move(tokens));
}

void Vocabulary::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write vocabulary " + path);
  for (const auto& t : tokens_) out << t << '\n';
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

TokenSeq Vocabulary::Encode(std::string_view text) const {
  TokenSeq ids;
  for (const auto& w : SplitWords(text)) ids.push_back(Id(w));
  return ids;
}

std::string Vocabulary::Decode(std::span<const TokenId> ids) const {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ' ';
    out += Token(ids[i]);
  }
  return out;
}

TokenId Vocabulary::Id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

const std::string& Vocabulary::Token(TokenId id) const {
  if (id < 0 || static_cast<size_t>(id) >= tokens_.size()) {
    throw Error(ErrorCode::kOutOfRange, "id out of range: " + std::to_string(id));
  }
  return tokens_[id];
}

bool Vocabulary::Contains(std::string_view token) const {
  return index_.count(std::string(token)) != 0;
}

}  // namespace ogsum
