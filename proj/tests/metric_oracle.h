// Copyright 2026 The dblpqa Authors.
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


// Answer-set metric oracle: pairs with precision, recall and F1 worked out by
// hand as fractions.

#ifndef DBLPQA_TESTS_METRIC_ORACLE_H_
#define DBLPQA_TESTS_METRIC_ORACLE_H_

#include <set>
#include <string>
#include <vector>

namespace dblpqa::testing {

struct MetricCase {
  std::set<std::string> predicted;
  std::set<std::string> gold;
  double precision;
  double recall;
  double f1;
};

inline const std::vector<MetricCase>& MetricOracle() {
  static const std::vector<MetricCase> cases = {
      {{}, {}, 1.0, 1.0, 1.0},
      {{"a"}, {}, 0.0, 0.0, 0.0},
      {{}, {"a"}, 0.0, 0.0, 0.0},
      {{"x", "y"}, {}, 0.0, 0.0, 0.0},
      {{"a"}, {"a"}, 1.0, 1.0, 1.0},
      {{"a"}, {"b"}, 0.0, 0.0, 0.0},
      {{"a", "b"}, {"b", "c"}, 0.5, 0.5, 0.5},
      {{"a"}, {"a", "b"}, 1.0, 0.5, 2.0 / 3},
      {{"a", "b"}, {"a"}, 0.5, 1.0, 2.0 / 3},
      {{"a", "b", "c"}, {"a"}, 1.0 / 3, 1.0, 0.5},
      {{"a"}, {"a", "b", "c", "d"}, 1.0, 0.25, 0.4},
      {{"a", "b", "c"}, {"a", "b", "d"}, 2.0 / 3, 2.0 / 3, 2.0 / 3},
      {{"a", "b", "c", "d"}, {"a", "b"}, 0.5, 1.0, 2.0 / 3},
      {{"a", "b"}, {"a", "b", "c", "d", "e"}, 1.0, 0.4, 4.0 / 7},
      {{"a", "b", "c"}, {"c", "d", "e", "f"}, 1.0 / 3, 0.25, 2.0 / 7},
      {{"a", "b", "c", "d"}, {"b", "c", "d", "e"}, 0.75, 0.75, 0.75},
      {{"a", "b", "c", "d", "e"}, {"a"}, 0.2, 1.0, 1.0 / 3},
      {{"a", "b", "c", "d", "e"}, {"a", "b", "f", "g"}, 0.4, 0.5, 4.0 / 9},
      {{"true"}, {"false"}, 0.0, 0.0, 0.0},
      {{"https://dblp.org/pid/69/4618", "https://dblp.org/pid/x/1"},
       {"https://dblp.org/pid/69/4618", "https://dblp.org/pid/x/1"},
       1.0, 1.0, 1.0},
  };
  return cases;
}

}  // namespace dblpqa::testing

#endif  // DBLPQA_TESTS_METRIC_ORACLE_H_
