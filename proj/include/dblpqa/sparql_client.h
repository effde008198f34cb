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


// SPARQL endpoint client and the SPARQL 1.1 JSON results format.

#ifndef DBLPQA_SPARQL_CLIENT_H_
#define DBLPQA_SPARQL_CLIENT_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dblpqa/fixtures.h"
#include "dblpqa/http.h"
#include "dblpqa/query_builder.h"
#include "dblpqa/vocabulary.h"

namespace dblpqa {

struct AnswerValue {
  enum class Kind { kUri, kLiteral, kBoolean, kUnbound };

  Kind kind = Kind::kUnbound;
  std::string value;  // lexical form; "true"/"false" for booleans
  std::string datatype;
  std::string lang;

  static AnswerValue Uri(std::string v) { return {Kind::kUri, std::move(v), "", ""}; }
  static AnswerValue Literal(std::string v, std::string datatype = "",
                             std::string lang = "") {
    return {Kind::kLiteral, std::move(v), std::move(datatype), std::move(lang)};
  }
  static AnswerValue Boolean(bool b) { return {Kind::kBoolean, b ? "true" : "false", "", ""}; }

  bool operator==(const AnswerValue&) const = default;
};

struct AnswerTable {
  std::vector<std::string> columns;  // variable names without '?'
  std::vector<std::vector<AnswerValue>> rows;
  bool truncated = false;
  bool is_boolean = false;  // ASK: one "answer" column, one row

  bool operator==(const AnswerTable&) const = default;
};

// Decodes an application/sparql-results+json body, keeping at most max_rows
// rows. Throws Error(MalformedResults).
AnswerTable ParseResults(std::string_view body,
                         size_t max_rows = std::numeric_limits<size_t>::max());

// Encodes a table in the same format; ParseResults inverts it.
std::string SerializeResults(const AnswerTable& table);

struct EndpointConfig {
  std::string url = "https://dblp-kg.ltdemos.informatik.uni-hamburg.de/sparql";
  std::chrono::milliseconds timeout{30000};
  size_t max_rows = 1000;
  // Queries at least this long are sent as a POST form.
  size_t post_threshold = 2000;
  FixtureMode fixture_mode = FixtureMode::kOff;
  std::filesystem::path fixture_dir;
};

class SparqlClient {
 public:
  SparqlClient(EndpointConfig config, Vocabulary vocab, std::shared_ptr<HttpClient> http);

  // Throws EndpointUnavailable, EndpointTimeout, QueryRejected (endpoint
  // message verbatim), MalformedResults or FixtureMiss.
  AnswerTable Execute(std::string_view query) const;
  AnswerTable Execute(const SparqlQuery& query) const { return Execute(query.text); }

  // Normalized query text when it parses, whitespace-collapsed otherwise.
  static std::string FixtureText(std::string_view query, const Vocabulary& vocab);
  static std::string FixtureKey(std::string_view query, const Vocabulary& vocab);

  const EndpointConfig& config() const { return config_; }

 private:
  EndpointConfig config_;
  Vocabulary vocab_;
  std::shared_ptr<HttpClient> http_;
  std::shared_ptr<FixtureStore> fixtures_;
};

}  // namespace dblpqa

#endif  // DBLPQA_SPARQL_CLIENT_H_
