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

// Template base: gold queries with their entities abstracted to <topicN>,
// deduplicated, and retrieved by token edit distance.

#ifndef DBLPQA_TEMPLATE_BASE_H_
#define DBLPQA_TEMPLATE_BASE_H_

#include <string>
#include <string_view>
#include <vector>

#include "dblpqa/logical_form.h"
#include "dblpqa/vocabulary.h"

namespace dblpqa {

struct Template {
  TemplateForm form;
  std::string serialization;  // canonical logical-form text of form
  int placeholder_count = 0;
  int frequency = 0;
  std::vector<std::string> source_ids;
};

struct TemplateMatch {
  Template tmpl;
  double distance = 0;
  int rank = 0;  // 1-based
};

// A gold query split into its template and the values it abstracted, listed
// in placeholder order (bindings[0] fills <topic1>).
struct TemplatizedQuery {
  TemplateForm form;
  std::vector<Term> bindings;
};

// ParseSparql then MaskEntities. Throws ParseError.
TemplatizedQuery Templatize(std::string_view sparql, const Vocabulary& vocab);

int CountPlaceholders(const LogicalForm& form);

struct GoldItem {
  std::string id;
  std::string sparql;
};

struct SkippedItem {
  std::string id;
  ErrorCode code = ErrorCode::kParseFailure;
  std::string reason;
};

struct BuildReport {
  size_t items = 0;
  size_t parsed = 0;
  size_t templates = 0;
  std::vector<SkippedItem> skipped;
};

// Levenshtein distance over tokens (unit costs).
size_t TokenLevenshtein(const std::vector<std::string>& a,
                        const std::vector<std::string>& b);

// TokenLevenshtein / max(|a|, |b|); 0 when both are empty.
double TokenEditDistance(const std::vector<std::string>& a,
                         const std::vector<std::string>& b);

class TemplateBase {
 public:
  TemplateBase() = default;
  TemplateBase(std::vector<Template> templates, Vocabulary vocab,
               std::string built_from = "", size_t item_count = 0);

  // Unparseable items are skipped and listed in the report.
  static TemplateBase Build(const std::vector<GoldItem>& items, const Vocabulary& vocab,
                            BuildReport* report = nullptr,
                            std::string built_from = "");

  // Top-k templates by distance to a masked form, then frequency descending,
  // then serialization. Throws EmptyTemplateBase.
  std::vector<TemplateMatch> Retrieve(const TemplateForm& masked, int k) const;
  // Same over raw masked tokens, for model output that does not parse.
  std::vector<TemplateMatch> RetrieveTokens(const std::vector<std::string>& masked_tokens,
                                            int k) const;

  // One JSON header line, then one JSON record per template.
  void Save(const std::string& path) const;
  std::string SaveToString() const;
  static TemplateBase Load(const std::string& path, const Vocabulary& vocab);
  static TemplateBase LoadFromString(std::string_view text, const Vocabulary& vocab);

  const std::vector<Template>& templates() const { return templates_; }
  const std::string& built_from() const { return built_from_; }
  size_t item_count() const { return item_count_; }
  size_t size() const { return templates_.size(); }
  bool empty() const { return templates_.empty(); }

  // Variable-canonical tokens the distance is computed on.
  std::vector<std::string> MatchTokens(const TemplateForm& form) const;

 private:
  std::vector<Template> templates_;
  std::vector<std::vector<std::string>> match_tokens_;
  Vocabulary vocab_;
  std::string built_from_;
  size_t item_count_ = 0;
};

}  // namespace dblpqa

#endif  // DBLPQA_TEMPLATE_BASE_H_
