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


#include "dblpqa/config.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dblpqa {

namespace {

using json = nlohmann::json;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kConfigError, "config: " + what);
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.empty() || path.is_absolute()) return path;
  return base / path;
}

template <typename T>
T Get(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    Bad(where + "." + key + " has the wrong type");
  }
}

json Section(const json& doc, const char* key) {
  if (!doc.contains(key)) return json::object();
  if (!doc[key].is_object()) Bad(std::string(key) + " must be an object");
  return doc[key];
}

std::chrono::milliseconds Millis(const json& obj, std::chrono::milliseconds fallback,
                                 const std::string& where) {
  int64_t ms = Get<int64_t>(obj, "timeout_ms", fallback.count(), where);
  if (ms <= 0) Bad(where + ".timeout_ms must be positive");
  return std::chrono::milliseconds(ms);
}

}  // namespace

AppConfig ParseConfig(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) Bad("not a JSON object");
  AppConfig c;

  c.schema_manifest = Resolve(base_dir, Get<std::string>(doc, "schema_manifest", "", ""));
  if (c.schema_manifest.empty()) Bad("schema_manifest is required");

  json fixtures = Section(doc, "fixtures");
  FixtureMode mode = ParseFixtureMode(Get<std::string>(fixtures, "mode", "off", "fixtures"));
  auto fixture_dir = Resolve(base_dir, Get<std::string>(fixtures, "dir", "", "fixtures"));

  json tr = Section(doc, "translator");
  std::string tmode = Get<std::string>(tr, "mode", "rule-based", "translator");
  if (tmode == "rule-based") {
    c.translator_mode = TranslatorMode::kRuleBased;
  } else if (tmode == "model-endpoint") {
    c.translator_mode = TranslatorMode::kModelEndpoint;
  } else {
    Bad("translator.mode must be rule-based or model-endpoint");
  }
  c.patterns = Resolve(base_dir, Get<std::string>(tr, "patterns", "", "translator"));
  c.reference_year = Get<int>(tr, "reference_year", 0, "translator");
  c.model.endpoint_url = Get<std::string>(tr, "endpoint_url", "", "translator");
  c.model.timeout = Millis(tr, c.model.timeout, "translator");
  c.model.max_output_tokens = Get<int>(tr, "max_output_tokens", 512, "translator");
  c.model.max_in_flight = Get<int>(tr, "max_in_flight", 4, "translator");
  if (c.model.max_output_tokens <= 0) Bad("translator.max_output_tokens must be positive");

  json li = Section(doc, "linker");
  c.linker.base_url = Get<std::string>(li, "base_url", c.linker.base_url, "linker");
  c.linker.hits_per_query = Get<int>(li, "hits_per_query", 10, "linker");
  c.linker.timeout = Millis(li, c.linker.timeout, "linker");
  c.linker.fixture_mode =
      ParseFixtureMode(Get<std::string>(li, "fixture_mode", std::string(FixtureModeName(mode)),
                                        "linker"));
  c.linker.fixture_dir =
      li.contains("fixture_dir")
          ? Resolve(base_dir, Get<std::string>(li, "fixture_dir", "", "linker"))
          : fixture_dir;

  json ep = Section(doc, "endpoint");
  c.endpoint.url = Get<std::string>(ep, "url", c.endpoint.url, "endpoint");
  c.endpoint.timeout = Millis(ep, c.endpoint.timeout, "endpoint");
  c.endpoint.max_rows = Get<size_t>(ep, "max_rows", 1000, "endpoint");
  c.endpoint.post_threshold = Get<size_t>(ep, "post_threshold", 2000, "endpoint");
  c.endpoint.fixture_mode =
      ParseFixtureMode(Get<std::string>(ep, "fixture_mode", std::string(FixtureModeName(mode)),
                                        "endpoint"));
  c.endpoint.fixture_dir =
      ep.contains("fixture_dir")
          ? Resolve(base_dir, Get<std::string>(ep, "fixture_dir", "", "endpoint"))
          : fixture_dir;

  c.templates = Resolve(base_dir, Get<std::string>(doc, "templates", "", ""));
  c.k = Get<int>(doc, "k", 5, "");
  c.max_candidates = Get<int>(doc, "max_candidates", 5, "");
  if (c.k <= 0) Bad("k must be positive");
  if (c.max_candidates <= 0) Bad("max_candidates must be positive");

  json se = Section(doc, "session");
  c.session.ttl = std::chrono::seconds(Get<int64_t>(se, "ttl_seconds", 3600, "session"));
  c.session.max_sessions = Get<size_t>(se, "max_sessions", 1000, "session");
  if (c.session.ttl.count() <= 0) Bad("session.ttl_seconds must be positive");
  if (c.session.max_sessions == 0) Bad("session.max_sessions must be positive");

  json sv = Section(doc, "server");
  c.host = Get<std::string>(sv, "host", c.host, "server");
  c.port = Get<int>(sv, "port", c.port, "server");
  return c;
}

AppConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  AppConfig c = ParseConfig(buf.str(), std::filesystem::absolute(path).parent_path());
  ApplyEnvironment(c);
  return c;
}

void ApplyEnvironment(AppConfig& c) {
  if (const char* v = std::getenv("DBLPQA_ENDPOINT_URL"); v && *v) c.endpoint.url = v;
  if (const char* v = std::getenv("DBLPQA_SEARCH_URL"); v && *v) c.linker.base_url = v;
  if (const char* v = std::getenv("DBLPQA_MODEL_URL"); v && *v) {
    c.model.endpoint_url = v;
    c.translator_mode = TranslatorMode::kModelEndpoint;
  }
  if (const char* v = std::getenv("DBLPQA_FIXTURE_MODE"); v && *v) {
    FixtureMode mode = ParseFixtureMode(v);
    c.linker.fixture_mode = mode;
    c.endpoint.fixture_mode = mode;
  }
}

std::shared_ptr<Pipeline> BuildPipeline(const AppConfig& c,
                                        std::shared_ptr<HttpClient> http) {
  auto p = std::make_shared<Pipeline>();
  p->vocab = Vocabulary::FromManifestFile(c.schema_manifest.string());
  if (c.translator_mode == TranslatorMode::kRuleBased) {
    if (c.patterns.empty()) Bad("translator.patterns is required in rule-based mode");
    p->translator = std::make_shared<PatternTranslator>(
        LoadPatternFile(c.patterns.string(), p->vocab), p->vocab,
        c.reference_year > 0 ? c.reference_year : CurrentYear());
  } else {
    if (c.model.endpoint_url.empty()) {
      Bad("translator.endpoint_url is required in model-endpoint mode");
    }
    p->translator = std::make_shared<ModelEndpointTranslator>(c.model, p->vocab, http);
  }
  p->linker = std::make_shared<EntityLinker>(c.linker, http);
  p->endpoint = std::make_shared<SparqlClient>(c.endpoint, p->vocab, http);
  if (!c.templates.empty()) {
    p->templates = std::make_shared<TemplateBase>(
        TemplateBase::Load(c.templates.string(), p->vocab));
  } else {
    p->templates = std::make_shared<TemplateBase>();
  }
  p->k = c.k;
  p->max_candidates = c.max_candidates;
  return p;
}

}  // namespace dblpqa
