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

// The logical-form language: a SPARQL-shaped token sequence in which entities
// are still natural-language mentions, e.g.
//
//   SELECT DISTINCT ?firstanswer ?secondanswer WHERE {
//     BERT:_Pre-training_of_... <authoredBy> ?firstanswer <dot>
//     ?x <authoredBy> ?firstanswer <dot>
//     ?x <publishedIn> ?secondanswer
//     FILTER ( ?x <isnot> BERT:_Pre-training_of_... ) }
//
// The same syntax tree is produced from executable SPARQL text (ParseSparql),
// so templating, instantiation and normalization share one grammar.

#ifndef DBLPQA_LOGICAL_FORM_H_
#define DBLPQA_LOGICAL_FORM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "dblpqa/error.h"
#include "dblpqa/vocabulary.h"

namespace dblpqa {

struct Term {
  enum class Kind { kVariable, kMention, kLiteral, kUri, kPlaceholder };

  Kind kind = Kind::kVariable;
  // Variables keep their '?'. Mentions are underscore-joined. Literals hold
  // their lexical form: an integer, or a double-quoted string with optional
  // @lang / ^^<datatype> suffix. URIs are stored without angle brackets.
  std::string text;

  static Term Variable(std::string name) { return {Kind::kVariable, std::move(name)}; }
  static Term Mention(std::string text) { return {Kind::kMention, std::move(text)}; }
  static Term Literal(std::string text) { return {Kind::kLiteral, std::move(text)}; }
  static Term Uri(std::string uri) { return {Kind::kUri, std::move(uri)}; }
  static Term Placeholder(int index);

  // Mentions, literals and URIs are the terms a template abstracts away.
  bool IsBindable() const {
    return kind == Kind::kMention || kind == Kind::kLiteral ||
           kind == Kind::kUri;
  }

  bool operator==(const Term&) const = default;
};

struct Triple {
  Term subject;
  // A relation token such as "<authoredBy>". SPARQL read with
  // allow_raw_predicates may also store "<http://...>" for predicates that
  // are not in the vocabulary.
  std::string relation;
  Term object;

  bool operator==(const Triple&) const = default;
};

struct Comparison {
  Term lhs;
  std::string op;  // operator token, e.g. "<isnot>"
  Term rhs;

  bool operator==(const Comparison&) const = default;
};

struct GroupPattern;

struct NotExists {
  std::vector<GroupPattern> pattern;  // exactly one group

  bool operator==(const NotExists&) const;
};

struct Filter {
  std::variant<Comparison, NotExists> condition;

  bool operator==(const Filter&) const = default;
};

// `{ a } UNION { b } ...`; a single branch is a plain nested group.
struct Union {
  std::vector<GroupPattern> branches;

  bool operator==(const Union&) const;
};

using Element = std::variant<Triple, Filter, Union>;

struct GroupPattern {
  std::vector<Element> elements;

  bool operator==(const GroupPattern&) const = default;
};

struct Projection {
  std::string variable;  // output name; ?count for `( COUNT ( ?x ) AS ?count )`
  bool is_count = false;
  bool count_distinct = false;
  std::string count_of;

  bool operator==(const Projection&) const = default;
};

struct OrderKey {
  enum class Direction { kNone, kAsc, kDesc };

  Direction direction = Direction::kNone;
  bool is_count = false;
  bool count_distinct = false;
  std::string variable;

  bool operator==(const OrderKey&) const = default;
};

struct LogicalForm {
  enum class Kind { kSelect, kAsk };

  Kind kind = Kind::kSelect;
  bool distinct = false;
  std::vector<Projection> projection;
  GroupPattern where;
  std::vector<std::string> group_by;
  std::vector<OrderKey> order_by;
  std::optional<int64_t> limit;

  bool operator==(const LogicalForm&) const = default;
};

// A logical form whose entities are `<topicN>` placeholders.
using TemplateForm = LogicalForm;

// ---------------------------------------------------------------------------
// Parsing and rendering.

// Parses the whitespace-tokenized logical-form serialization. Throws
// ParseError with code EmptyInput, UnbalancedDelimiter, UnknownRelationToken,
// UnexpectedToken or InvalidForm.
LogicalForm ParseLogicalForm(std::string_view text, const Vocabulary& vocab);

struct SparqlReadOptions {
  // Keep predicates outside the vocabulary as raw URIs instead of failing
  // with UnknownRelationToken.
  bool allow_raw_predicates = false;
};

// Reads executable SPARQL of the supported subset into the same tree.
// Predicate URIs known to the vocabulary become relation tokens and
// comparison symbols become operator tokens.
LogicalForm ParseSparql(std::string_view text, const Vocabulary& vocab,
                        SparqlReadOptions options = {});

enum class RenderStyle { kLogicalForm, kSparql };

// Canonical token sequence. kSparql maps relation tokens to <uri>, operators
// to their symbols and <dot> to '.'. Mentions and placeholders are emitted
// verbatim in both styles; Detokenize rejects them.
std::vector<std::string> RenderTokens(const LogicalForm& form, RenderStyle style,
                                      const Vocabulary& vocab);

// Canonical single-space serialization; ParseLogicalForm inverts it.
std::string Serialize(const LogicalForm& form, const Vocabulary& vocab);

// Splits text into logical-form tokens (quoted strings stay whole). Never
// throws; used for malformed model output.
std::vector<std::string> TokenizeLogicalForm(std::string_view text);

// Reports the first unmatched brace or parenthesis, if any.
std::optional<ParseError> CheckDelimiters(std::string_view text,
                                          RenderStyle style);

struct SubsetViolation {
  std::string token;
  size_t offset = 0;
  size_t line = 1;
  size_t column = 1;
};

// SPARQL constructs the grammar does not model (OPTIONAL, PREFIX, prefixed
// names, property paths, functions, ...).
std::vector<SubsetViolation> FindSubsetViolations(std::string_view sparql);

// Renames every non-reserved variable to ?v1, ?v2, ... in order of first
// appearance in the canonical rendering.
LogicalForm CanonicalizeVariables(const LogicalForm& form);
std::vector<std::string> CanonicalizeVariableTokens(
    const std::vector<std::string>& tokens);
bool IsReservedVariable(std::string_view name);

// Collects every term in rendering order.
std::vector<const Term*> CollectTerms(const LogicalForm& form);

// ---------------------------------------------------------------------------
// Mentions.

enum class EntityKind {
  kPublication,
  kPerson,
  kVenue,
  kLiteralYear,
  kLiteralString,
  kLiteralNumber,
  kUnknown,
};

std::string_view EntityKindName(EntityKind kind);
std::optional<EntityKind> ParseEntityKind(std::string_view name);
bool IsLiteralKind(EntityKind kind);

struct MentionPosition {
  enum class Slot { kSubject, kObject, kFilterLeft, kFilterRight };

  // Index into the triples and comparisons of the form, in rendering order.
  size_t pattern_index = 0;
  Slot slot = Slot::kSubject;

  bool operator==(const MentionPosition&) const = default;
};

struct EntityMention {
  std::string surface;  // human-readable: underscores become spaces
  Term term;            // the term as it occurs in the form
  int occurrence_index = 0;
  EntityKind inferred_kind = EntityKind::kUnknown;
  std::vector<MentionPosition> positions;

  bool operator==(const EntityMention&) const = default;
};

// Subject/object kinds a relation implies, if the relation is in the table.
std::optional<std::pair<EntityKind, EntityKind>> RelationSlotKinds(
    std::string_view relation);

// One mention per distinct bindable term (mentions, literals, URIs), ordered
// by first occurrence. Kinds come from a majority vote over slots.
std::vector<EntityMention> ExtractMentions(const LogicalForm& form);

// Replaces every bindable term by `<topicN>`, N being its occurrence index.
std::pair<TemplateForm, std::vector<EntityMention>> MaskEntities(
    const LogicalForm& form);

// Same as ExtractMentions/MaskEntities but over raw tokens that do not parse;
// slots are inferred from adjacent relation tokens.
std::vector<EntityMention> ExtractMentionsFromTokens(
    const std::vector<std::string>& tokens, const Vocabulary& vocab);
std::vector<std::string> MaskTokens(const std::vector<std::string>& tokens,
                                    const Vocabulary& vocab);

// Surface text -> mention token: whitespace runs become single underscores.
std::string MentionTokenFromSurface(std::string_view surface);

// Literal helpers.
bool IsIntegerLiteral(std::string_view text);
bool IsStringLiteral(std::string_view text);
// `"a\"b"@en` -> `a"b`.
std::string StringLiteralContent(std::string_view text);
std::string QuoteStringLiteral(std::string_view content);

}  // namespace dblpqa

#endif  // DBLPQA_LOGICAL_FORM_H_
