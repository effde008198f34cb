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

#ifndef DBLPQA_VOCABULARY_H_
#define DBLPQA_VOCABULARY_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dblpqa {

enum class TokenClass { kKeyword, kStructural, kOperator, kRelation };

// Special-token inventory of the logical-form language. Keywords, structural
// tokens and comparison operators are fixed; relation tokens come from a
// schema manifest so the predicate set can follow the KG schema.
//
// Manifest format, one mapping per line, '#' starts a comment:
//
//   <authoredBy> = https://dblp.org/rdf/schema#authoredBy
class Vocabulary {
 public:
  // Empty relation set; keywords, structural tokens and operators only.
  Vocabulary() = default;

  static Vocabulary FromManifestText(std::string_view text);
  static Vocabulary FromManifestFile(const std::string& path);

  std::optional<TokenClass> Classify(std::string_view token) const;

  static bool IsKeyword(std::string_view token);
  static bool IsOperator(std::string_view token);
  static bool IsStructural(std::string_view token);
  bool IsRelation(std::string_view token) const;

  // Relation token -> predicate URI, or nullptr.
  const std::string* PredicateUri(std::string_view token) const;
  // Predicate URI -> relation token, or nullptr.
  const std::string* RelationToken(std::string_view uri) const;

  // Operator token (<isnot>) <-> SPARQL symbol (!=).
  static std::optional<std::string_view> OperatorSymbol(std::string_view token);
  static std::optional<std::string_view> OperatorToken(std::string_view symbol);

  static const std::vector<std::string_view>& Keywords();
  static const std::vector<std::string_view>& Operators();

  const std::map<std::string, std::string, std::less<>>& relations() const {
    return relations_;
  }

 private:
  void AddRelation(std::string token, std::string uri, size_t line);

  std::map<std::string, std::string, std::less<>> relations_;
  std::map<std::string, std::string, std::less<>> by_uri_;
};

// True for `<topicN>` with N >= 1.
bool IsPlaceholderToken(std::string_view token);
// N of `<topicN>`, 0 if not a placeholder.
int PlaceholderIndex(std::string_view token);
std::string PlaceholderToken(int index);

// scheme ":" followed by at least one non-space character.
bool IsAbsoluteUri(std::string_view text);

}  // namespace dblpqa

#endif  // DBLPQA_VOCABULARY_H_
