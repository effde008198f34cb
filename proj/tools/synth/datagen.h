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


// Regenerates every committed data file from the synthetic world: the
// training split, the template base, evaluation sets and the recorded
// search/endpoint responses the replay mode serves.

#ifndef DBLPQA_SYNTH_DATAGEN_H_
#define DBLPQA_SYNTH_DATAGEN_H_

#include <atomic>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "dblpqa/http.h"
#include "synth/world.h"

namespace dblpqa::synth {

// Answers search API and SPARQL requests from the world. Queries outside the
// subset get a 400 with the parser message.
class WorldHttpClient : public HttpClient {
 public:
  WorldHttpClient(std::shared_ptr<const World> world, Vocabulary vocab);
  HttpResponse Send(const HttpRequest& request) override;

  size_t requests() const { return requests_; }

 private:
  std::shared_ptr<const World> world_;
  Vocabulary vocab_;
  std::atomic<size_t> requests_{0};
};

// An ASK query the world answers with false: the formal record is from 2019.
std::string KnownFalseAsk();

// Gold queries for the built-in example questions, in the same order.
std::vector<std::string> ExampleGoldQueries();

struct DataSummary {
  size_t train_items = 0;
  size_t templates = 0;
  size_t skipped = 0;
  size_t fixtures = 0;
};

// Reads schema and patterns through the config at config_path and writes
// synth/train.json, templates.jsonl, eval/gold50.json, eval/examples.json
// and fixtures/ under out_root. An existing fixtures/ directory is cleared.
DataSummary WriteData(const std::filesystem::path& config_path,
                      const std::filesystem::path& out_root);

}  // namespace dblpqa::synth

#endif  // DBLPQA_SYNTH_DATAGEN_H_
