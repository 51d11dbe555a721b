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

#include "eval/report.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "core/error.h"
#include "eval/rouge.h"

namespace ogsum::eval {

namespace {

using Triple = std::array<double, 3>;

Triple Score(const std::vector<std::string>& cand,
             const std::vector<std::string>& ref) {
  return {RougeN(cand, ref, 1).f1, RougeN(cand, ref, 2).f1, RougeL(cand, ref).f1};
}

std::string Fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

double ReportTable::at(const std::string& metric, const std::string& column) const {
  size_t m = 0;
  while (m < 3 && metric != kMetrics[m]) ++m;
  auto it = std::find(columns.begin(), columns.end(), column);
  if (m == 3 || it == columns.end()) {
    throw Error(ErrorCode::kInvalidArgument,
                "no report cell " + metric + " / " + column);
  }
  return values[m][static_cast<size_t>(it - columns.begin())];
}

ReportTable PerLengthReport(const ReportInput& input) {
  const size_t n = input.references.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "no instances to evaluate");
  if (input.l_min < 1 || input.l_max < input.l_min) {
    throw Error(ErrorCode::kInvalidArgument, "invalid length range");
  }
  if (input.hypotheses.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "hypotheses do not cover every instance");
  }
  const size_t n_len = input.l_max - input.l_min + 1;

  // scores[i][l] for instance i and length index l.
  std::vector<std::vector<Triple>> scores(n, std::vector<Triple>(n_len));
  for (size_t i = 0; i < n; ++i) {
    const auto ref = RougeTokens(input.references[i]);
    for (size_t l = 0; l < n_len; ++l) {
      const size_t len = input.l_min + l;
      auto it = input.hypotheses[i].find(len);
      if (it == input.hypotheses[i].end()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "missing hypothesis for instance " + std::to_string(i) +
                        " at L=" + std::to_string(len));
      }
      scores[i][l] = Score(RougeTokens(it->second), ref);
    }
  }

  ReportTable t;
  t.values.assign(3, {});
  auto add_column = [&](const std::string& name, const Triple& sum) {
    t.columns.push_back(name);
    for (size_t m = 0; m < 3; ++m) t.values[m].push_back(sum[m] / static_cast<double>(n));
  };

  Triple avg{0, 0, 0};
  for (size_t l = 0; l < n_len; ++l) {
    Triple sum{0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
      for (size_t m = 0; m < 3; ++m) sum[m] += scores[i][l][m];
    }
    add_column("L=" + std::to_string(input.l_min + l), sum);
    for (size_t m = 0; m < 3; ++m) avg[m] += sum[m] / static_cast<double>(n_len);
  }
  add_column("Avg", avg);

  for (const auto& [name, chosen] : input.selections) {
    if (chosen.size() != n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "selection '" + name + "' does not cover every instance");
    }
    Triple sum{0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
      if (chosen[i] < input.l_min || chosen[i] > input.l_max) {
        throw Error(ErrorCode::kInvalidArgument,
                    "missing hypothesis for instance " + std::to_string(i) +
                        " at L=" + std::to_string(chosen[i]));
      }
      for (size_t m = 0; m < 3; ++m) sum[m] += scores[i][chosen[i] - input.l_min][m];
    }
    add_column(name, sum);
  }

  Triple oracle{0, 0, 0};
  for (size_t i = 0; i < n; ++i) {
    for (size_t m = 0; m < 3; ++m) {
      double best = 0.0;
      for (size_t l = 0; l < n_len; ++l) best = std::max(best, scores[i][l][m]);
      oracle[m] += best;
    }
  }
  add_column("Oracle", oracle);
  return t;
}

std::string FormatTable(const ReportTable& table) {
  std::vector<size_t> width(table.columns.size());
  for (size_t c = 0; c < table.columns.size(); ++c) {
    width[c] = std::max<size_t>(table.columns[c].size(), 6);
  }
  std::ostringstream os;
  os << "Metric";
  for (size_t c = 0; c < table.columns.size(); ++c) {
    os << "  " << std::string(width[c] - table.columns[c].size(), ' ')
       << table.columns[c];
  }
  os << '\n';
  for (size_t m = 0; m < 3; ++m) {
    std::string name = kMetrics[m];
    os << name << std::string(6 - name.size(), ' ');
    for (size_t c = 0; c < table.columns.size(); ++c) {
      const std::string v = Fixed(100.0 * table.values[m][c], 2);
      os << "  " << std::string(width[c] - v.size(), ' ') << v;
    }
    os << '\n';
  }
  return os.str();
}

std::string FormatJsonl(const ReportTable& table) {
  std::ostringstream os;
  for (size_t m = 0; m < 3; ++m) {
    for (size_t c = 0; c < table.columns.size(); ++c) {
      nlohmann::ordered_json rec;
      rec["metric"] = kMetrics[m];
      rec["column"] = table.columns[c];
      rec["value"] = std::stod(Fixed(table.values[m][c], 6));
      os << rec.dump() << '\n';
    }
  }
  return os.str();
}

}  // namespace ogsum::eval
