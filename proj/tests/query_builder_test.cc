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


#include <doctest.h>

#include "dblpqa/entity_linker.h"
#include "dblpqa/query_builder.h"
#include "test_util.h"

namespace dblpqa {
namespace {

using testing::TestVocab;

const std::string kS = "https://dblp.org/rdf/schema#";

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

std::string FormalUriFromFixture() {
  EntityLinker linker(testing::ReplayConfig().linker, testing::NoNetwork());
  EntityMention m;
  m.surface = testing::kBertTitle;
  m.inferred_kind = EntityKind::kPublication;
  return linker.Link(m).at(0).uri;
}

TEST_SUITE("query_builder") {

TEST_CASE("walkthrough form bound to the formal record") {
  std::string uri = FormalUriFromFixture();
  LogicalForm f = ParseLogicalForm(testing::WalkthroughForm(), TestVocab());
  LogicalForm bound =
      Bind(f, {{MentionTokenFromSurface(testing::kBertTitle), Term::Uri(uri)}});
  CHECK(Detokenize(bound, TestVocab()) ==
        "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { <" + uri + "> <" + kS +
            "authoredBy> ?firstanswer . ?x <" + kS + "authoredBy> ?firstanswer . ?x <" + kS +
            "publishedIn> ?secondanswer FILTER ( ?x != <" + uri + "> ) }");
}

TEST_CASE("ASK with a year literal") {
  TemplateForm t = ParseLogicalForm("ASK { <topic1> <yearOfPublication> <topic2> }", TestVocab());
  SparqlQuery q = Instantiate(
      t, PositionalBindings({Term::Uri("https://dblp.org/rec/x"), Term::Literal("2019")}),
      TestVocab());
  CHECK(q.text == "ASK { <https://dblp.org/rec/x> <" + kS + "yearOfPublication> 2019 }");
  CHECK(q.origin == QueryOrigin::kTemplateCorrected);
}

TEST_CASE("arity is checked in both directions") {
  TemplateForm t = ParseLogicalForm(
      "SELECT ?x WHERE { ?x <authoredBy> <topic1> <dot> ?x <yearOfPublication> <topic2> }",
      TestVocab());
  try {
    Instantiate(t, PositionalBindings({Term::Uri("urn:a")}), TestVocab());
    FAIL("expected UnboundPlaceholder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnboundPlaceholder);
    CHECK(std::string(e.what()).find("<topic2>") != std::string::npos);
  }
  CHECK(CodeOf([&] {
          Instantiate(t,
                      PositionalBindings({Term::Uri("urn:a"), Term::Literal("1"),
                                          Term::Literal("2")}),
                      TestVocab());
        }) == ErrorCode::kArityMismatch);
  CHECK(CodeOf([&] { Bind(t, {{"<topic1>", Term::Variable("?v")}}); }) ==
        ErrorCode::kInvalidForm);
  CHECK(CodeOf([&] {
          Detokenize(ParseLogicalForm("SELECT ?x WHERE { ?x <authoredBy> Ada }", TestVocab()),
                     TestVocab());
        }) == ErrorCode::kUnboundPlaceholder);
}

TEST_CASE("template without placeholders is only detokenized") {
  TemplateForm t =
      ParseLogicalForm("SELECT ?x WHERE { ?x <authoredBy> ?y }", TestVocab());
  CHECK(Instantiate(t, {}, TestVocab()).text ==
        "SELECT ?x WHERE { ?x <" + kS + "authoredBy> ?y }");
}

TEST_CASE("validation") {
  LogicalForm f = Bind(ParseLogicalForm(testing::WalkthroughForm(), TestVocab()),
                       {{MentionTokenFromSurface(testing::kBertTitle),
                         Term::Uri(testing::kBertFormalUri)}});
  CHECK(Validate(Detokenize(f, TestVocab()), TestVocab()).empty());

  auto d = Validate("SELECT ?x WHERE {\n ?x <urn:p> ?y ", TestVocab());
  REQUIRE(d.size() == 1);
  CHECK(d[0].severity == Diagnostic::Severity::kError);
  CHECK(d[0].line == 2);
  CHECK(HasErrors(d));

  d = Validate("SELECT ?x WHERE { ?x <urn:p> ?y OPTIONAL { ?x <urn:q> ?z } }", TestVocab());
  REQUIRE_FALSE(d.empty());
  CHECK(d[0].severity == Diagnostic::Severity::kWarning);
  CHECK(d[0].message.find("outside supported subset") != std::string::npos);
  CHECK_FALSE(HasErrors(d));
}

TEST_CASE("normalization ignores whitespace and variable names") {
  std::string a = "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { <urn:p> <" + kS +
                  "authoredBy> ?firstanswer . ?x <" + kS + "authoredBy> ?firstanswer . ?x <" +
                  kS + "publishedIn> ?secondanswer FILTER ( ?x != <urn:p> ) }";
  std::string b = "select distinct ?firstanswer ?secondanswer where {\n  <urn:p> <" + kS +
                  "authoredBy> ?firstanswer .\n  ?paper <" + kS +
                  "authoredBy> ?firstanswer .\n  ?paper <" + kS +
                  "publishedIn> ?secondanswer FILTER(?paper != <urn:p>)\n}";
  CHECK(Normalize(a, TestVocab()) == Normalize(b, TestVocab()));
  CHECK(Normalize(a, TestVocab()) != Normalize(a + " LIMIT 1", TestVocab()));
  CHECK(CodeOf([] { Normalize("SELECT ?x WHERE { ?x", TestVocab()); }) ==
        ErrorCode::kParseFailure);
  CHECK(QueryOriginName(QueryOrigin::kUserEdited) == "user-edited");
}

}  // TEST_SUITE

}  // namespace
}  // namespace dblpqa
