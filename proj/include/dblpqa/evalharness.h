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


// DBLP-QuAD loading, answer-set scoring and batch evaluation.

#ifndef DBLPQA_EVALHARNESS_H_
#define DBLPQA_EVALHARNESS_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dblpqa/session.h"
#include "dblpqa/sparql_client.h"
#include "dblpqa/template_base.h"

namespace dblpqa {

struct DatasetItem {
  std::string id;
  std::string question;
  std::string gold_query;
  std::set<std::string> gold_answers;
};

// Accepts {"questions": [...]} or a bare array. Per item: "id"; "question"
// as a string or {"string": ...}; "query" as {"sparql": ...} or "sparql" as a
// string; optional "answer" as a SPARQL JSON results object or a list of
// strings. Throws FileUnreadable or SchemaMismatch.
std::vector<DatasetItem> LoadDataset(const std::string& path);
std::vector<DatasetItem> ParseDataset(std::string_view json_text);

// URIs verbatim, literals by lexical form, booleans "true"/"false".
std::string CanonicalAnswer(const AnswerValue& value);
std::set<std::string> AnswerSet(const AnswerTable& table);

struct Score {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

// Both sets empty scores (1, 1, 1).
Score ScoreAnswers(const std::set<std::string>& predicted,
                   const std::set<std::string>& gold);

enum class EvalMode { kFull, kGoldLogicalForm };

std::string_view EvalModeName(EvalMode mode);
EvalMode ParseEvalMode(std::string_view name);

struct ItemScore {
  std::string id;
  Score score;
  std::string error;  // error code name, empty when the item ran
  std::string query;
};

struct ScoreReport {
  EvalMode mode = EvalMode::kFull;
  std::vector<ItemScore> items;
  double macro_precision = 0;
  double macro_recall = 0;
  double macro_f1 = 0;
  size_t errors = 0;
};

// Full mode runs the pipeline from the question. Gold-logical-form mode
// templatizes the gold query, retrieves its template, instantiates it with
// the gold bindings and executes it. Per-item failures score as empty
// predictions with an error tag.
ScoreReport Evaluate(const Pipeline& pipeline, const std::vector<DatasetItem>& items,
                     EvalMode mode, int parallelism = 4);

nlohmann::json ReportToJson(const ScoreReport& report);
std::string SummaryTable(const ScoreReport& report);

struct RoundTripItem {
  std::string id;
  bool parsed = false;
  bool equal = false;
  std::string reason;  // parse error, or both normal forms on mismatch
};

struct RoundTripReport {
  size_t items = 0;
  size_t parsed = 0;
  size_t equal = 0;
  std::vector<RoundTripItem> failures;  // unparseable and unequal items
};

// instantiate(templatize(g), bindings of g) against g, under Normalize.
RoundTripReport CheckRoundTrip(const std::vector<DatasetItem>& items,
                               const Vocabulary& vocab);

}  // namespace dblpqa

#endif  // DBLPQA_EVALHARNESS_H_
