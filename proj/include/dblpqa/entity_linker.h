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

// Entity linking against the DBLP Search API and literal matching.

#ifndef DBLPQA_ENTITY_LINKER_H_
#define DBLPQA_ENTITY_LINKER_H_

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dblpqa/fixtures.h"
#include "dblpqa/http.h"
#include "dblpqa/logical_form.h"

namespace dblpqa {

struct EntityCandidate {
  std::string uri;
  std::string label;
  EntityKind kind = EntityKind::kPublication;
  double score = 0;
  int rank = 0;  // 1-based

  bool operator==(const EntityCandidate&) const = default;
};

struct LinkerConfig {
  std::string base_url = "https://dblp.org";
  int hits_per_query = 10;
  std::chrono::milliseconds timeout{10000};
  FixtureMode fixture_mode = FixtureMode::kOff;
  std::filesystem::path fixture_dir;
};

// "/search/publ/api", "/search/author/api" or "/search/venue/api".
std::string_view SearchApiPath(EntityKind kind);

// Decodes a search API response body; hits keep API order. Throws
// Error(SearchApiMalformedResponse).
std::vector<EntityCandidate> ParseSearchResponse(std::string_view body,
                                                 EntityKind kind);

class EntityLinker {
 public:
  EntityLinker(LinkerConfig config, std::shared_ptr<HttpClient> http);

  // Ranked candidates for a publication, person, venue or unknown mention.
  // Unknown mentions query all three APIs and merge by score. No hits is an
  // empty list. Throws SearchApiUnavailable, SearchApiMalformedResponse,
  // FixtureMiss, or UnsupportedKind for literal kinds.
  std::vector<EntityCandidate> Link(const EntityMention& mention) const;

  // One API call, surface text verbatim.
  std::vector<EntityCandidate> Search(EntityKind kind, std::string_view query) const;

  static std::string FixtureKey(std::string_view api_path, std::string_view query,
                                int hits);

  const LinkerConfig& config() const { return config_; }

 private:
  LinkerConfig config_;
  std::shared_ptr<HttpClient> http_;
  std::shared_ptr<FixtureStore> fixtures_;
};

// Literal mentions: a 4-digit year becomes an integer literal, a string a
// quoted literal with the surface text unchanged, a number an integer
// literal. Literal terms pass through. Throws NotALiteralKind, MalformedYear.
Term MatchLiteral(const EntityMention& mention);

}  // namespace dblpqa

#endif  // DBLPQA_ENTITY_LINKER_H_
