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


#include "dblpqa/query_builder.h"

#include <map>
#include <set>

#include "dblpqa/error.h"

namespace dblpqa {

namespace {

// CollectTerms hands out const pointers into a form we own.
std::vector<Term*> MutableTerms(LogicalForm& form) {
  std::vector<Term*> out;
  for (const Term* t : CollectTerms(form)) out.push_back(const_cast<Term*>(t));
  return out;
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace

std::string_view QueryOriginName(QueryOrigin origin) {
  switch (origin) {
    case QueryOrigin::kGenerated: return "generated";
    case QueryOrigin::kTemplateCorrected: return "template-corrected";
    case QueryOrigin::kUserEdited: return "user-edited";
  }
  return "generated";
}

std::string Detokenize(const LogicalForm& form, const Vocabulary& vocab) {
  std::vector<std::string> open;
  std::set<std::string> seen;
  for (const Term* t : CollectTerms(form)) {
    if (t->kind != Term::Kind::kPlaceholder && t->kind != Term::Kind::kMention) continue;
    if (seen.insert(t->text).second) open.push_back(t->text);
  }
  if (!open.empty()) {
    std::string list;
    for (const auto& o : open) list += (list.empty() ? "" : ", ") + o;
    throw Error(ErrorCode::kUnboundPlaceholder, "unbound: " + list);
  }
  return JoinTokens(RenderTokens(form, RenderStyle::kSparql, vocab));
}

LogicalForm Bind(const TemplateForm& form, const std::vector<Binding>& bindings) {
  LogicalForm out = form;
  std::set<int> placeholders;
  std::set<std::string> mentions;
  for (const Term* t : CollectTerms(form)) {
    if (t->kind == Term::Kind::kPlaceholder) placeholders.insert(PlaceholderIndex(t->text));
    if (t->kind == Term::Kind::kMention) mentions.insert(t->text);
  }
  std::map<int, Term> by_index;
  std::map<std::string, Term> by_mention;
  for (const auto& b : bindings) {
    if (b.value.kind != Term::Kind::kUri && b.value.kind != Term::Kind::kLiteral) {
      throw Error(ErrorCode::kInvalidForm,
                  "binding for " + b.placeholder + " is not a URI or literal");
    }
    int index = PlaceholderIndex(b.placeholder);
    if (index > 0) {
      if (!placeholders.count(index)) {
        throw Error(ErrorCode::kArityMismatch,
                    "template has " + std::to_string(placeholders.size()) +
                        " placeholder(s) but a binding is given for " + b.placeholder);
      }
      by_index[index] = b.value;
    } else {
      if (!mentions.count(b.placeholder)) {
        throw Error(ErrorCode::kArityMismatch,
                    "no mention '" + b.placeholder + "' in the form");
      }
      by_mention[b.placeholder] = b.value;
    }
  }
  for (Term* t : MutableTerms(out)) {
    if (t->kind == Term::Kind::kPlaceholder) {
      auto it = by_index.find(PlaceholderIndex(t->text));
      if (it != by_index.end()) *t = it->second;
    } else if (t->kind == Term::Kind::kMention) {
      auto it = by_mention.find(t->text);
      if (it != by_mention.end()) *t = it->second;
    }
  }
  std::vector<std::string> open;
  std::set<std::string> seen;
  for (const Term* t : CollectTerms(out)) {
    if (t->kind == Term::Kind::kPlaceholder && seen.insert(t->text).second) {
      open.push_back(t->text);
    }
  }
  if (!open.empty()) {
    std::string list;
    for (const auto& o : open) list += (list.empty() ? "" : ", ") + o;
    throw Error(ErrorCode::kUnboundPlaceholder, "unbound: " + list);
  }
  return out;
}

std::vector<Binding> PositionalBindings(const std::vector<Term>& values) {
  std::vector<Binding> out;
  for (size_t i = 0; i < values.size(); ++i) {
    out.push_back({PlaceholderToken(static_cast<int>(i) + 1), values[i]});
  }
  return out;
}

SparqlQuery Instantiate(const TemplateForm& form, const std::vector<Binding>& bindings,
                        const Vocabulary& vocab, QueryOrigin origin) {
  return {Detokenize(Bind(form, bindings), vocab), origin};
}

std::vector<Diagnostic> Validate(std::string_view text, const Vocabulary& vocab) {
  std::vector<Diagnostic> out;
  if (auto err = CheckDelimiters(text, RenderStyle::kSparql)) {
    out.push_back({Diagnostic::Severity::kError, err->what(), err->offset(), err->line(),
                   err->column()});
    return out;
  }
  for (const auto& v : FindSubsetViolations(text)) {
    out.push_back({Diagnostic::Severity::kWarning,
                   "outside supported subset: " + v.token, v.offset, v.line, v.column});
  }
  if (!out.empty()) return out;
  try {
    ParseSparql(text, vocab, {.allow_raw_predicates = true});
  } catch (const ParseError& e) {
    out.push_back({Diagnostic::Severity::kError, e.what(), e.offset(), e.line(),
                   e.column()});
  }
  return out;
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Diagnostic::Severity::kError) return true;
  }
  return false;
}

std::string Normalize(std::string_view text, const Vocabulary& vocab) {
  LogicalForm form;
  try {
    form = ParseSparql(text, vocab, {.allow_raw_predicates = true});
  } catch (const ParseError& e) {
    throw Error(ErrorCode::kParseFailure, std::string("cannot normalize: ") + e.what());
  }
  return JoinTokens(RenderTokens(CanonicalizeVariables(form), RenderStyle::kSparql, vocab));
}

}  // namespace dblpqa
