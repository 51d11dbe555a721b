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

#ifndef OGSUM_EVAL_REPORT_H_
#define OGSUM_EVAL_REPORT_H_

#include <map>
#include <string>
#include <vector>

namespace ogsum::eval {

inline constexpr const char* kMetrics[] = {"R-1", "R-2", "R-L"};

struct ReportInput {
  std::vector<std::string> references;
  // hypotheses[i][L] = summary text of instance i at length L.
  std::vector<std::map<size_t, std::string>> hypotheses;
  size_t l_min = 7;
  size_t l_max = 16;
  // Column label -> chosen length per instance, e.g. "Best Length".
  std::vector<std::pair<std::string, std::vector<size_t>>> selections;
};

struct ReportTable {
  std::vector<std::string> columns;
  // values[metric][column], metric order as kMetrics.
  std::vector<std::vector<double>> values;

  // Throws if the column is absent.
  double at(const std::string& metric, const std::string& column) const;
};

// Mean F1 per length column, the across-length mean ("Avg"), one column per
// selection and the per-instance oracle over lengths ("Oracle"). Throws with
// the instance and length when a hypothesis is missing.
ReportTable PerLengthReport(const ReportInput& input);

std::string FormatTable(const ReportTable& table);
// One {"metric","column","value"} record per cell.
std::string FormatJsonl(const ReportTable& table);

}  // namespace ogsum::eval

#endif  // OGSUM_EVAL_REPORT_H_
