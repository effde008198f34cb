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


#include "dblpqa/entity_linker.h"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "dblpqa/error.h"

namespace dblpqa {

namespace {

using json = nlohmann::json;

std::string_view LabelField(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPerson: return "author";
    case EntityKind::kVenue: return "venue";
    default: return "title";
  }
}

// Info fields are usually strings but may be {"text": ...} objects.
std::string FieldText(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains("text") && v["text"].is_string()) {
    return v["text"].get<std::string>();
  }
  if (v.is_number()) return v.dump();
  return "";
}

double ScoreOf(const json& hit) {
  if (!hit.contains("@score")) return 0;
  const json& s = hit["@score"];
  if (s.is_number()) return s.get<double>();
  if (s.is_string()) {
    try {
      return std::stod(s.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::kSearchApiMalformedResponse, "hit has a non-numeric @score");
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kSearchApiMalformedResponse, "search API response: " + what);
}

}  // namespace

std::string_view SearchApiPath(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPublication: return "/search/publ/api";
    case EntityKind::kPerson: return "/search/author/api";
    case EntityKind::kVenue: return "/search/venue/api";
    default: break;
  }
  throw Error(ErrorCode::kUnsupportedKind,
              "no search API for kind " + std::string(EntityKindName(kind)));
}

std::vector<EntityCandidate> ParseSearchResponse(std::string_view body,
                                                 EntityKind kind) {
  json doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) Malformed("not JSON");
  if (!doc.is_object() || !doc.contains("result") || !doc["result"].is_object()) {
    Malformed("missing result object");
  }
  const json& result = doc["result"];
  std::vector<EntityCandidate> out;
  if (!result.contains("hits")) return out;
  const json& hits = result["hits"];
  if (!hits.is_object()) Malformed("result.hits is not an object");
  if (!hits.contains("hit")) return out;
  json list = hits["hit"];
  if (list.is_object()) list = json::array({list});
  if (!list.is_array()) Malformed("result.hits.hit is not an array");
  for (const auto& hit : list) {
    if (!hit.is_object() || !hit.contains("info") || !hit["info"].is_object()) {
      Malformed("hit without info");
    }
    const json& info = hit["info"];
    EntityCandidate c;
    c.uri = info.contains("url") ? FieldText(info["url"]) : "";
    if (c.uri.empty()) Malformed("hit without url");
    std::string field(LabelField(kind));
    c.label = info.contains(field) ? FieldText(info[field]) : "";
    c.kind = kind;
    c.score = ScoreOf(hit);
    if (c.score < 0) Malformed("negative @score");
    c.rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(c));
  }
  // The API already orders by score; keep ties in API order.
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  for (size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
  return out;
}

EntityLinker::EntityLinker(LinkerConfig config, std::shared_ptr<HttpClient> http)
    : config_(std::move(config)), http_(std::move(http)) {
  if (config_.hits_per_query <= 0) {
    throw Error(ErrorCode::kConfigError, "hits_per_query must be positive");
  }
  if (config_.timeout.count() <= 0) {
    throw Error(ErrorCode::kConfigError, "linker timeout must be positive");
  }
  fixtures_ = std::make_shared<FixtureStore>(config_.fixture_mode, config_.fixture_dir);
  while (!config_.base_url.empty() && config_.base_url.back() == '/') {
    config_.base_url.pop_back();
  }
}

std::string EntityLinker::FixtureKey(std::string_view api_path,
                                     std::string_view query, int hits) {
  std::string h = std::to_string(hits);
  return FixtureStore::Key({api_path, query, h});
}

std::vector<EntityCandidate> EntityLinker::Search(EntityKind kind,
                                                  std::string_view query) const {
  std::string path(SearchApiPath(kind));
  HttpRequest request;
  request.method = "GET";
  request.url = config_.base_url + path;
  request.params = {{"q", std::string(query)},
                    {"format", "json"},
                    {"h", std::to_string(config_.hits_per_query)}};
  request.headers["Accept"] = "application/json";
  request.timeout = config_.timeout;

  json meta = {{"api", path}, {"q", query}, {"h", config_.hits_per_query}};
  HttpResponse response = fixtures_->Fetch(
      FixtureKey(path, query, config_.hits_per_query), meta, [&] {
        try {
          return http_->Send(request);
        } catch (const TransportError& e) {
          throw Error(ErrorCode::kSearchApiUnavailable,
                      std::string("search API: ") + e.what());
        }
      });
  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorCode::kSearchApiUnavailable,
                "search API returned HTTP " + std::to_string(response.status));
  }
  return ParseSearchResponse(response.body, kind);
}

std::vector<EntityCandidate> EntityLinker::Link(const EntityMention& mention) const {
  switch (mention.inferred_kind) {
    case EntityKind::kPublication:
    case EntityKind::kPerson:
    case EntityKind::kVenue:
      return Search(mention.inferred_kind, mention.surface);
    case EntityKind::kUnknown:
      break;
    default:
      throw Error(ErrorCode::kUnsupportedKind,
                  "literal mention '" + mention.surface + "' is not linked");
  }
  std::vector<EntityCandidate> merged;
  for (EntityKind kind :
       {EntityKind::kPublication, EntityKind::kPerson, EntityKind::kVenue}) {
    auto part = Search(kind, mention.surface);
    merged.insert(merged.end(), part.begin(), part.end());
  }
  // Concatenation order breaks ties: publication, person, venue.
  std::stable_sort(merged.begin(), merged.end(),
                   [](const auto& a, const auto& b) { return a.score > b.score; });
  for (size_t i = 0; i < merged.size(); ++i) merged[i].rank = static_cast<int>(i) + 1;
  return merged;
}

Term MatchLiteral(const EntityMention& mention) {
  if (mention.term.kind == Term::Kind::kLiteral || mention.term.kind == Term::Kind::kUri) {
    if (mention.inferred_kind == EntityKind::kLiteralYear &&
        !(IsIntegerLiteral(mention.term.text) && mention.term.text.size() == 4)) {
      throw Error(ErrorCode::kMalformedYear, "not a 4-digit year: " + mention.term.text);
    }
    return mention.term;
  }
  const std::string& s = mention.surface;
  switch (mention.inferred_kind) {
    case EntityKind::kLiteralYear: {
      bool ok = s.size() == 4 && std::all_of(s.begin(), s.end(), [](char c) {
                  return std::isdigit(static_cast<unsigned char>(c));
                });
      if (!ok) throw Error(ErrorCode::kMalformedYear, "not a 4-digit year: " + s);
      return Term::Literal(s);
    }
    case EntityKind::kLiteralString:
      return Term::Literal(QuoteStringLiteral(s));
    case EntityKind::kLiteralNumber:
      if (!IsIntegerLiteral(s)) {
        throw Error(ErrorCode::kNotALiteralKind, "not an integer: " + s);
      }
      return Term::Literal(s);
    default:
      throw Error(ErrorCode::kNotALiteralKind,
                  "mention '" + s + "' has kind " +
                      std::string(EntityKindName(mention.inferred_kind)));
  }
}

}  // namespace dblpqa
