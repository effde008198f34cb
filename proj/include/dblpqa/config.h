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


// Service configuration (JSON) and pipeline assembly.
//
//   {"schema_manifest": "schema.manifest",
//    "translator": {"mode": "rule-based", "patterns": "patterns.json"},
//    "linker": {"base_url": "https://dblp.org", "hits_per_query": 10},
//    "endpoint": {"url": "...", "max_rows": 1000},
//    "fixtures": {"mode": "replay", "dir": "fixtures"},
//    "templates": "templates.jsonl", "k": 5, "max_candidates": 5,
//    "session": {"ttl_seconds": 3600, "max_sessions": 1000},
//    "server": {"host": "127.0.0.1", "port": 8080}}
//
// Relative paths resolve against the config file's directory. The
// environment variables DBLPQA_ENDPOINT_URL, DBLPQA_SEARCH_URL,
// DBLPQA_MODEL_URL and DBLPQA_FIXTURE_MODE override the file.

#ifndef DBLPQA_CONFIG_H_
#define DBLPQA_CONFIG_H_

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

#include "dblpqa/entity_linker.h"
#include "dblpqa/http.h"
#include "dblpqa/session.h"
#include "dblpqa/sparql_client.h"
#include "dblpqa/translator.h"

namespace dblpqa {

enum class TranslatorMode { kRuleBased, kModelEndpoint };

struct AppConfig {
  std::filesystem::path schema_manifest;
  TranslatorMode translator_mode = TranslatorMode::kRuleBased;
  std::filesystem::path patterns;
  int reference_year = 0;  // 0: current year
  ModelEndpointConfig model;
  LinkerConfig linker;
  EndpointConfig endpoint;
  std::filesystem::path templates;
  int k = 5;
  int max_candidates = 5;
  SessionLimits session;
  std::string host = "127.0.0.1";
  int port = 8080;
};

// Throws Error(ConfigError) naming the offending key.
AppConfig ParseConfig(std::string_view json_text, const std::filesystem::path& base_dir);
AppConfig LoadConfig(const std::filesystem::path& path);
void ApplyEnvironment(AppConfig& config);

std::shared_ptr<Pipeline> BuildPipeline(const AppConfig& config,
                                        std::shared_ptr<HttpClient> http = MakeHttpClient());

}  // namespace dblpqa

#endif  // DBLPQA_CONFIG_H_
