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

#ifndef OGSUM_CORE_VOCAB_H_
#define OGSUM_CORE_VOCAB_H_

#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "core/sequence.h"

namespace ogsum {

// Whitespace-token vocabulary. Ids 0-3 are always the specials, in the order
// MASK, SEP, PAD, UNK; content tokens follow.
class Vocabulary {
 public:
  static constexpr TokenId kMask = 0;
  static constexpr TokenId kSep = 1;
  static constexpr TokenId kPad = 2;
  static constexpr TokenId kUnk = 3;
  static constexpr TokenId kNumSpecials = 4;

  static const std::vector<std::string>& SpecialNames();

  // Specials first, then tokens with count >= min_count by descending
  // frequency, ties broken lexicographically.
  static Vocabulary Build(std::span<const std::string> corpus, int min_count);

  // `tokens` must begin with the four special names.
  static Vocabulary FromTokens(std::vector<std::string> tokens);

  static Vocabulary Load(const std::string& path);
  void Save(const std::string& path) const;

  TokenSeq Encode(std::string_view text) const;
  std::string Decode(std::span<const TokenId> ids) const;

  TokenId Id(std::string_view token) const;
  const std::string& Token(TokenId id) const;
  bool Contains(std::string_view token) const;

  size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  static bool IsSpecial(TokenId id) { return id >= 0 && id < kNumSpecials; }

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  explicit Vocabulary(std::vector<std::string> tokens);

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

// Splits on ASCII whitespace.
std::vector<std::string> SplitWords(std::string_view text);
std::string JoinWords(std::span<const std::string> words);

}  // namespace ogsum

#endif  // OGSUM_CORE_VOCAB_H_
