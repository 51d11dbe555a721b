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

#ifndef OGSUM_EVAL_ROUGE_H_
#define OGSUM_EVAL_ROUGE_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ogsum::eval {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Lowercase, split on whitespace, strip trailing periods, drop empty tokens.
// No stemming and no stopword removal.
std::vector<std::string> RougeTokens(std::string_view text);

RougeScore FromCounts(size_t overlap, size_t candidate, size_t reference);

// Clipped n-gram overlap; n must be 1 or 2.
RougeScore RougeN(std::string_view candidate, std::string_view reference, int n);
RougeScore RougeN(std::span<const std::string> candidate,
                  std::span<const std::string> reference, int n);

RougeScore RougeL(std::string_view candidate, std::string_view reference);
RougeScore RougeL(std::span<const std::string> candidate,
                  std::span<const std::string> reference);

size_t LcsLength(std::span<const std::string> a, std::span<const std::string> b);
size_t ClippedOverlap(std::span<const std::string> a,
                      std::span<const std::string> b, int n);

}  // namespace ogsum::eval

#endif  // OGSUM_EVAL_ROUGE_H_
