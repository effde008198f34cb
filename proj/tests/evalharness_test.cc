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


#include <cmath>

#include <doctest.h>

#include "dblpqa/evalharness.h"
#include "metric_oracle.h"
#include "test_util.h"

namespace dblpqa {
namespace {

using json = nlohmann::json;

std::string EvalFile(const char* name) { return (testing::DataDir() / "eval" / name).string(); }

TEST_SUITE("evalharness") {

TEST_CASE("metric oracle") {
  for (const auto& c : testing::MetricOracle()) {
    Score s = ScoreAnswers(c.predicted, c.gold);
    CAPTURE(c.predicted.size());
    CAPTURE(c.gold.size());
    CHECK(std::abs(s.precision - c.precision) < 1e-12);
    CHECK(std::abs(s.recall - c.recall) < 1e-12);
    CHECK(std::abs(s.f1 - c.f1) < 1e-12);
  }
}

TEST_CASE("canonical answers") {
  CHECK(CanonicalAnswer(AnswerValue::Uri("https://dblp.org/pid/69/4618")) ==
        "https://dblp.org/pid/69/4618");
  AnswerTable t;
  t.columns = {"a", "b"};
  t.rows = {{AnswerValue::Uri("u"), AnswerValue::Literal("ACL")},
            {AnswerValue::Uri("u"), AnswerValue::Literal("2019")}};
  CHECK(AnswerSet(t) == std::set<std::string>{"u", "ACL", "2019"});
}

TEST_CASE("dataset parsing") {
  CHECK(LoadDataset((testing::DataDir() / "synth" / "train.json").string()).size() == 7000);
  CHECK(ParseDataset(R"({"questions": []})").empty());
  CHECK(ParseDataset("[]").empty());

  auto items = ParseDataset(R"([{"id": "q1", "question": "who?", "sparql": "ASK { }",
                                 "answer": ["x", "y"]},
                                {"id": "q2", "question": {"string": "what?"},
                                 "query": {"sparql": "SELECT ?x WHERE { ?x ?y ?z }"}}])");
  REQUIRE(items.size() == 2);
  CHECK(items[0].gold_answers == std::set<std::string>{"x", "y"});
  CHECK(items[1].question == "what?");
  CHECK(items[1].gold_answers.empty());

  try {
    ParseDataset(R"([{"id": "Q42", "question": "who?"}])");
    FAIL("expected SchemaMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchemaMismatch);
    CHECK(std::string(e.what()).find("Q42") != std::string::npos);
  }
  CHECK_THROWS_AS(ParseDataset("{"), Error);
  CHECK_THROWS_AS(ParseDataset(R"([{"id": "a", "question": "x", "sparql": "s"},
                                   {"id": "a", "question": "y", "sparql": "t"}])"),
                  Error);
  try {
    LoadDataset("/nonexistent/train.json");
    FAIL("expected FileUnreadable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFileUnreadable);
  }
}

TEST_CASE("gold logical forms score perfectly") {
  auto pipeline = testing::ReplayPipeline();
  auto items = LoadDataset(EvalFile("gold50.json"));
  REQUIRE(items.size() == 50);
  ScoreReport r = Evaluate(*pipeline, items, EvalMode::kGoldLogicalForm, 4);
  CHECK(r.errors == 0);
  CHECK(r.macro_f1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("full mode on the example questions") {
  auto pipeline = testing::ReplayPipeline();
  auto items = LoadDataset(EvalFile("examples.json"));
  ScoreReport r = Evaluate(*pipeline, items, EvalMode::kFull, 2);
  CHECK(r.items.size() == items.size());
  CHECK(r.errors == 0);
  CHECK(r.macro_f1 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("per-item failures are tagged and counted") {
  auto pipeline = testing::ReplayPipeline();
  auto items = LoadDataset(EvalFile("examples.json"));
  items.push_back({"bad1", "colorless green ideas sleep furiously", "ASK { }", {"x"}});
  items.push_back({"bad2", "who wrote 'zzqx qqzw'?", "ASK { }", {}});
  ScoreReport r = Evaluate(*pipeline, items, EvalMode::kFull, 3);
  REQUIRE(r.items.size() == items.size());
  size_t tagged = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    CHECK(r.items[i].id == items[i].id);
    if (!r.items[i].error.empty()) ++tagged;
  }
  CHECK(tagged == r.errors);
  CHECK(r.errors >= 1);
  CHECK(r.items[items.size() - 2].error == "NoPatternMatched");
  CHECK(r.items[items.size() - 2].score.f1 == 0.0);

  json j = ReportToJson(r);
  CHECK(j["items"] == items.size());
  CHECK(j["per_item"].size() == items.size());
  CHECK(j["mode"] == "full");
  std::string table = SummaryTable(r);
  CHECK(table.find("NoPatternMatched") != std::string::npos);
  CHECK(table.find("items       7") != std::string::npos);
}

TEST_CASE("modes") {
  CHECK(ParseEvalMode("full") == EvalMode::kFull);
  CHECK(ParseEvalMode(EvalModeName(EvalMode::kGoldLogicalForm)) == EvalMode::kGoldLogicalForm);
  CHECK_THROWS_AS(ParseEvalMode("fast"), Error);
}

TEST_CASE("round trip over the training data") {
  auto items = LoadDataset((testing::DataDir() / "synth" / "train.json").string());
  RoundTripReport r = CheckRoundTrip(items, testing::TestVocab());
  CHECK(r.items == 7000);
  CHECK(r.parsed == 6890);
  CHECK(r.equal == r.parsed);
  CHECK(r.failures.size() == r.items - r.equal);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dblpqa
