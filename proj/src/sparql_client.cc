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


#include "dblpqa/sparql_client.h"

#include <sstream>

#include <json.hpp>

#include "dblpqa/error.h"

namespace dblpqa {

namespace {

using json = nlohmann::json;

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedResults, "SPARQL results: " + what);
}

AnswerValue DecodeTerm(const json& term) {
  if (!term.is_object() || !term.contains("type") || !term["type"].is_string() ||
      !term.contains("value") || !term["value"].is_string()) {
    Malformed("binding without type/value strings");
  }
  std::string type = term["type"].get<std::string>();
  std::string value = term["value"].get<std::string>();
  if (type == "uri") return AnswerValue::Uri(std::move(value));
  if (type == "literal" || type == "typed-literal") {
    return AnswerValue::Literal(std::move(value), term.value("datatype", ""),
                                term.value("xml:lang", ""));
  }
  if (type == "bnode") return AnswerValue::Literal("_:" + value);
  Malformed("unknown term type '" + type + "'");
}

json EncodeTerm(const AnswerValue& v) {
  switch (v.kind) {
    case AnswerValue::Kind::kUri:
      return {{"type", "uri"}, {"value", v.value}};
    case AnswerValue::Kind::kLiteral: {
      json t = {{"type", "literal"}, {"value", v.value}};
      if (!v.datatype.empty()) t["datatype"] = v.datatype;
      if (!v.lang.empty()) t["xml:lang"] = v.lang;
      return t;
    }
    case AnswerValue::Kind::kBoolean:
      return {{"type", "literal"},
              {"value", v.value},
              {"datatype", "http://www.w3.org/2001/XMLSchema#boolean"}};
    case AnswerValue::Kind::kUnbound:
      break;
  }
  return nullptr;
}

std::string CollapseWhitespace(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string word, out;
  while (in >> word) {
    if (!out.empty()) out += ' ';
    out += word;
  }
  return out;
}

}  // namespace

AnswerTable ParseResults(std::string_view body, size_t max_rows) {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) Malformed("not JSON");
  if (!doc.is_object()) Malformed("not an object");
  AnswerTable table;
  if (doc.contains("boolean")) {
    if (!doc["boolean"].is_boolean()) Malformed("boolean is not true/false");
    table.is_boolean = true;
    table.columns = {"answer"};
    table.rows = {{AnswerValue::Boolean(doc["boolean"].get<bool>())}};
    return table;
  }
  if (!doc.contains("head") || !doc["head"].is_object()) Malformed("missing head");
  const json& head = doc["head"];
  if (head.contains("vars")) {
    if (!head["vars"].is_array()) Malformed("head.vars is not an array");
    for (const auto& v : head["vars"]) {
      if (!v.is_string()) Malformed("head.vars entry is not a string");
      table.columns.push_back(v.get<std::string>());
    }
  }
  if (!doc.contains("results") || !doc["results"].is_object() ||
      !doc["results"].contains("bindings") || !doc["results"]["bindings"].is_array()) {
    Malformed("missing results.bindings");
  }
  for (const auto& binding : doc["results"]["bindings"]) {
    if (!binding.is_object()) Malformed("binding is not an object");
    if (table.rows.size() >= max_rows) {
      table.truncated = true;
      break;
    }
    std::vector<AnswerValue> row;
    row.reserve(table.columns.size());
    for (const auto& column : table.columns) {
      row.push_back(binding.contains(column) ? DecodeTerm(binding[column]) : AnswerValue{});
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string SerializeResults(const AnswerTable& table) {
  if (table.is_boolean) {
    bool b = !table.rows.empty() && !table.rows[0].empty() &&
             table.rows[0][0].value == "true";
    return json{{"head", json::object()}, {"boolean", b}}.dump();
  }
  json bindings = json::array();
  for (const auto& row : table.rows) {
    json b = json::object();
    for (size_t i = 0; i < table.columns.size() && i < row.size(); ++i) {
      if (row[i].kind == AnswerValue::Kind::kUnbound) continue;
      b[table.columns[i]] = EncodeTerm(row[i]);
    }
    bindings.push_back(std::move(b));
  }
  return json{{"head", {{"vars", table.columns}}}, {"results", {{"bindings", bindings}}}}
      .dump();
}

SparqlClient::SparqlClient(EndpointConfig config, Vocabulary vocab,
                           std::shared_ptr<HttpClient> http)
    : config_(std::move(config)), vocab_(std::move(vocab)), http_(std::move(http)) {
  if (config_.url.empty()) throw Error(ErrorCode::kConfigError, "endpoint URL is required");
  if (config_.timeout.count() <= 0) {
    throw Error(ErrorCode::kConfigError, "endpoint timeout must be positive");
  }
  if (config_.max_rows == 0) throw Error(ErrorCode::kConfigError, "max_rows must be positive");
  fixtures_ = std::make_shared<FixtureStore>(config_.fixture_mode, config_.fixture_dir);
}

std::string SparqlClient::FixtureText(std::string_view query, const Vocabulary& vocab) {
  try {
    return Normalize(query, vocab);
  } catch (const Error&) {
    return CollapseWhitespace(query);
  }
}

std::string SparqlClient::FixtureKey(std::string_view query, const Vocabulary& vocab) {
  std::string text = FixtureText(query, vocab);
  return FixtureStore::Key({"sparql", text});
}

AnswerTable SparqlClient::Execute(std::string_view query) const {
  HttpRequest request;
  request.method = query.size() < config_.post_threshold ? "GET" : "POST";
  request.url = config_.url;
  request.params = {{"query", std::string(query)}};
  request.headers["Accept"] = "application/sparql-results+json";
  request.timeout = config_.timeout;

  json meta = {{"query", FixtureText(query, vocab_)}};
  HttpResponse response =
      fixtures_->Fetch(FixtureKey(query, vocab_), meta, [&] {
        try {
          return http_->Send(request);
        } catch (const TransportError& e) {
          throw Error(e.kind() == TransportError::Kind::kTimeout
                          ? ErrorCode::kEndpointTimeout
                          : ErrorCode::kEndpointUnavailable,
                      std::string("SPARQL endpoint: ") + e.what());
        }
      });
  if (response.status >= 400 && response.status < 500) {
    throw Error(ErrorCode::kQueryRejected, response.body);
  }
  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorCode::kEndpointUnavailable,
                "SPARQL endpoint returned HTTP " + std::to_string(response.status));
  }
  return ParseResults(response.body, config_.max_rows);
}

}  // namespace dblpqa
