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


#include <cstdlib>
#include <fstream>

#include <doctest.h>

#include "dblpqa/config.h"
#include "test_util.h"

namespace dblpqa {
namespace {

ErrorCode CodeOf(const std::string& text) {
  try {
    ParseConfig(text, "/base");
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_SUITE("config") {

TEST_CASE("committed config") {
  AppConfig c = LoadConfig(testing::DataDir() / "config.json");
  CHECK(c.schema_manifest == testing::DataDir() / "schema.manifest");
  CHECK(c.translator_mode == TranslatorMode::kRuleBased);
  CHECK(c.reference_year == 2024);
  CHECK(c.k == 5);
  CHECK(c.max_candidates == 5);
  CHECK(c.endpoint.post_threshold == 2000);
  CHECK(c.linker.fixture_dir == testing::DataDir() / "fixtures");
}

TEST_CASE("defaults and path resolution") {
  AppConfig c = ParseConfig(R"({"schema_manifest": "s.manifest",
                                "fixtures": {"mode": "replay", "dir": "fx"},
                                "endpoint": {"fixture_dir": "/abs/ep"}})",
                            "/base");
  CHECK(c.schema_manifest == std::filesystem::path("/base/s.manifest"));
  CHECK(c.linker.fixture_mode == FixtureMode::kReplay);
  CHECK(c.linker.fixture_dir == std::filesystem::path("/base/fx"));
  CHECK(c.endpoint.fixture_dir == std::filesystem::path("/abs/ep"));
  CHECK(c.endpoint.max_rows == 1000);
  CHECK(c.session.max_sessions == 1000);
  CHECK(c.session.ttl == std::chrono::seconds(3600));
  CHECK(c.templates.empty());
}

TEST_CASE("invalid configs") {
  CHECK(CodeOf("[]") == ErrorCode::kConfigError);
  CHECK(CodeOf("{") == ErrorCode::kConfigError);
  CHECK(CodeOf("{}") == ErrorCode::kConfigError);
  CHECK(CodeOf(R"({"schema_manifest": "s", "k": 0})") == ErrorCode::kConfigError);
  CHECK(CodeOf(R"({"schema_manifest": "s", "k": "five"})") == ErrorCode::kConfigError);
  CHECK(CodeOf(R"({"schema_manifest": "s", "translator": {"mode": "magic"}})") ==
        ErrorCode::kConfigError);
  CHECK(CodeOf(R"({"schema_manifest": "s", "fixtures": {"mode": "sometimes"}})") ==
        ErrorCode::kConfigError);
  CHECK(CodeOf(R"({"schema_manifest": "s", "endpoint": {"timeout_ms": -1}})") ==
        ErrorCode::kConfigError);
  CHECK(CodeOf(R"({"schema_manifest": "s", "session": 4})") == ErrorCode::kConfigError);
  try {
    ParseConfig(R"({"schema_manifest": "s", "linker": {"hits_per_query": []}})", "/");
    FAIL("expected ConfigError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("hits_per_query") != std::string::npos);
  }
}

TEST_CASE("environment overrides") {
  AppConfig c = ParseConfig(R"({"schema_manifest": "s"})", "/");
  ::setenv("DBLPQA_ENDPOINT_URL", "http://localhost:9/sparql", 1);
  ::setenv("DBLPQA_FIXTURE_MODE", "record", 1);
  ApplyEnvironment(c);
  ::unsetenv("DBLPQA_ENDPOINT_URL");
  ::unsetenv("DBLPQA_FIXTURE_MODE");
  CHECK(c.endpoint.url == "http://localhost:9/sparql");
  CHECK(c.endpoint.fixture_mode == FixtureMode::kRecord);
  CHECK(c.linker.fixture_mode == FixtureMode::kRecord);
  CHECK(c.translator_mode == TranslatorMode::kRuleBased);
}

TEST_CASE("pipeline assembly") {
  auto p = testing::ReplayPipeline();
  CHECK(p->templates->size() == 32);
  CHECK(p->k == 5);

  AppConfig model = testing::ReplayConfig();
  model.translator_mode = TranslatorMode::kModelEndpoint;
  CHECK_THROWS_AS(BuildPipeline(model, testing::NoNetwork()), Error);
  model.model.endpoint_url = "http://localhost:9/translate";
  CHECK(BuildPipeline(model, testing::NoNetwork())->translator != nullptr);

  AppConfig missing = testing::ReplayConfig();
  missing.schema_manifest = "/nonexistent/schema.manifest";
  CHECK_THROWS_AS(BuildPipeline(missing, testing::NoNetwork()), Error);
  CHECK_THROWS_AS(LoadConfig("/nonexistent/config.json"), Error);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dblpqa
