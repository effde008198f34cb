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


// Instantiation of templates into executable SPARQL, validation of edited
// query text, and normalization for query equality.

#ifndef DBLPQA_QUERY_BUILDER_H_
#define DBLPQA_QUERY_BUILDER_H_

#include <string>
#include <string_view>
#include <vector>

#include "dblpqa/logical_form.h"
#include "dblpqa/vocabulary.h"

namespace dblpqa {

// placeholder is "<topicN>" or the text of a mention term.
struct Binding {
  std::string placeholder;
  Term value;  // uri or literal
};

enum class QueryOrigin { kGenerated, kTemplateCorrected, kUserEdited };

std::string_view QueryOriginName(QueryOrigin origin);

struct SparqlQuery {
  std::string text;
  QueryOrigin origin = QueryOrigin::kGenerated;

  bool operator==(const SparqlQuery&) const = default;
};

// SPARQL text of a fully bound form. Throws Error(UnboundPlaceholder) naming
// every placeholder or mention still present.
std::string Detokenize(const LogicalForm& form, const Vocabulary& vocab);

// Substitutes bindings. Throws ArityMismatch for a binding whose placeholder
// the form lacks, UnboundPlaceholder when a placeholder stays open, and
// InvalidForm for a value that is neither a URI nor a literal.
LogicalForm Bind(const TemplateForm& form, const std::vector<Binding>& bindings);

// Positional shorthand: values[i] fills <topic{i+1}>.
std::vector<Binding> PositionalBindings(const std::vector<Term>& values);

SparqlQuery Instantiate(const TemplateForm& form, const std::vector<Binding>& bindings,
                        const Vocabulary& vocab,
                        QueryOrigin origin = QueryOrigin::kTemplateCorrected);

struct Diagnostic {
  enum class Severity { kError, kWarning };

  Severity severity = Severity::kError;
  std::string message;
  size_t offset = 0;
  size_t line = 1;
  size_t column = 1;
};

// Empty when text is inside the supported subset. Constructs outside the
// subset are warnings; anything else that fails to parse is an error.
std::vector<Diagnostic> Validate(std::string_view text, const Vocabulary& vocab);
bool HasErrors(const std::vector<Diagnostic>& diagnostics);

// Canonical text: upper-case keywords, single spaces, variables renamed by
// first appearance (reserved answer names kept), canonical integers.
// Throws Error(ParseFailure).
std::string Normalize(std::string_view text, const Vocabulary& vocab);

}  // namespace dblpqa

#endif  // DBLPQA_QUERY_BUILDER_H_
