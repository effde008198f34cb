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


// Question/SPARQL pairs over the synthetic world, shaped like DBLP-QuAD:
// a few dozen query families with varied surface syntax and a small share
// of queries outside the subset grammar.

#ifndef DBLPQA_SYNTH_DATASET_H_
#define DBLPQA_SYNTH_DATASET_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dblpqa/sparql_client.h"
#include "synth/world.h"

namespace dblpqa::synth {

// "last N years" questions are resolved against this year.
inline constexpr int kReferenceYear = 2024;

struct DatasetEntry {
  std::string id;
  std::string family;
  std::string question;
  std::string sparql;
  std::optional<AnswerTable> answer;  // absent when the query is outside the subset
};

struct DatasetOptions {
  size_t count = 7000;
  unsigned seed = 7;
  std::string id_prefix = "T";
  bool with_answers = false;
  bool subset_only = false;  // skip the families the grammar rejects
};

std::vector<DatasetEntry> GenerateDataset(const World& world, const Vocabulary& vocab,
                                          const DatasetOptions& options);

// {"questions": [{"id", "question": {"string"}, "query": {"sparql"}, "answer"}]}
nlohmann::json DatasetToJson(const std::vector<DatasetEntry>& entries);

}  // namespace dblpqa::synth

#endif  // DBLPQA_SYNTH_DATASET_H_
