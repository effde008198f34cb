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


#include <random>

#include <doctest.h>

#include "dblpqa/logical_form.h"
#include "test_util.h"

namespace dblpqa {
namespace {

using testing::TestVocab;

size_t CountTriples(const GroupPattern& g) {
  size_t n = 0;
  for (const auto& e : g.elements) n += std::holds_alternative<Triple>(e) ? 1 : 0;
  return n;
}

std::vector<const Filter*> Filters(const GroupPattern& g) {
  std::vector<const Filter*> out;
  for (const auto& e : g.elements) {
    if (const auto* f = std::get_if<Filter>(&e)) out.push_back(f);
  }
  return out;
}

// Random forms inside the grammar, used as a round-trip oracle.
class FormGenerator {
 public:
  explicit FormGenerator(unsigned seed) : gen_(seed) {}

  LogicalForm Next() {
    LogicalForm f;
    f.kind = Chance(15) ? LogicalForm::Kind::kAsk : LogicalForm::Kind::kSelect;
    f.where = Group(0);
    if (f.kind == LogicalForm::Kind::kAsk) return f;
    // Projected variables must occur in a pattern.
    std::vector<std::string> bound;
    for (const auto& e : f.where.elements) {
      if (const auto* t = std::get_if<Triple>(&e)) {
        for (const Term* term : {&t->subject, &t->object}) {
          if (term->kind == Term::Kind::kVariable) bound.push_back(term->text);
        }
      }
    }
    auto pick_bound = [&] { return bound[Pick(bound.size())]; };
    f.distinct = Chance(60);
    if (Chance(20)) {
      Projection p;
      p.variable = "?count";
      p.is_count = true;
      p.count_distinct = Chance(50);
      p.count_of = pick_bound();
      f.projection.push_back(p);
    } else {
      size_t n = 1 + Pick(2);
      for (size_t i = 0; i < n; ++i) f.projection.push_back({pick_bound()});
    }
    if (Chance(20)) f.group_by.push_back(Variable());
    if (Chance(25)) {
      OrderKey k;
      k.direction = static_cast<OrderKey::Direction>(Pick(3));
      k.variable = Variable();
      if (k.direction != OrderKey::Direction::kNone && Chance(30)) {
        k.is_count = true;
        k.count_distinct = Chance(50);
      }
      f.order_by.push_back(k);
    }
    if (Chance(25)) f.limit = 1 + static_cast<int64_t>(Pick(100));
    return f;
  }

 private:
  size_t Pick(size_t n) { return gen_() % n; }
  bool Chance(unsigned percent) { return gen_() % 100 < percent; }

  std::string Variable() {
    static const char* kVars[] = {"?x", "?y", "?answer", "?firstanswer", "?secondanswer",
                                  "?paper", "?z2"};
    return kVars[Pick(7)];
  }

  Term AnyTerm() {
    switch (Pick(5)) {
      case 0: return Term::Mention(Pick(2) ? "Tim_Berners-Lee" : "the_BERT_paper");
      case 1: return Term::Literal(std::to_string(1990 + Pick(35)));
      case 2: return Term::Literal(Pick(2) ? "\"ACL\"" : "\"University of Zurich\"");
      case 3: return Term::Placeholder(1 + static_cast<int>(Pick(3)));
      default: return Term::Variable(Variable());
    }
  }

  std::string Relation() {
    const auto& rel = TestVocab().relations();
    auto it = rel.begin();
    std::advance(it, Pick(rel.size()));
    return it->first;
  }

  Triple AnyTriple() {
    Triple t;
    t.subject = Chance(50) ? Term::Variable(Variable()) : AnyTerm();
    t.relation = Relation();
    t.object = AnyTerm();
    return t;
  }

  GroupPattern Group(int depth) {
    GroupPattern g;
    Triple first = AnyTriple();
    first.subject = Term::Variable(Variable());
    g.elements.emplace_back(first);
    size_t extra = Pick(4);
    for (size_t i = 0; i < extra; ++i) {
      size_t what = Pick(depth < 2 ? 5 : 3);
      if (what <= 1) {
        g.elements.emplace_back(AnyTriple());
      } else if (what == 2) {
        static const char* kOps[] = {"<isnot>", "<is>", "<lt>", "<gt>", "<leq>", "<geq>"};
        Filter f{Comparison{Term::Variable(Variable()), kOps[Pick(6)], AnyTerm()}};
        g.elements.emplace_back(f);
      } else if (what == 3) {
        Union u;
        size_t branches = 1 + Pick(3);
        for (size_t b = 0; b < branches; ++b) u.branches.push_back(Group(depth + 1));
        g.elements.emplace_back(std::move(u));
      } else {
        NotExists ne;
        ne.pattern.push_back(Group(depth + 1));
        g.elements.emplace_back(Filter{std::move(ne)});
      }
    }
    return g;
  }

  std::mt19937 gen_;
};

TEST_SUITE("logical_form") {

TEST_CASE("walkthrough block parses into the expected tree") {
  LogicalForm f = ParseLogicalForm(testing::kWalkthroughBlock, TestVocab());
  CHECK(f.kind == LogicalForm::Kind::kSelect);
  CHECK(f.distinct);
  REQUIRE(f.projection.size() == 2);
  CHECK(f.projection[0].variable == "?firstanswer");
  CHECK(f.projection[1].variable == "?secondanswer");
  CHECK(CountTriples(f.where) == 3);
  auto filters = Filters(f.where);
  REQUIRE(filters.size() == 1);
  const auto& cmp = std::get<Comparison>(filters[0]->condition);
  CHECK(cmp.op == "<isnot>");
  CHECK(cmp.lhs == Term::Variable("?x"));
  CHECK(cmp.rhs == Term::Mention("the_BERT_paper"));
}

TEST_CASE("minimal ASK form") {
  LogicalForm f = ParseLogicalForm("ASK { the_BERT_paper <yearOfPublication> 2019 }", TestVocab());
  CHECK(f.kind == LogicalForm::Kind::kAsk);
  REQUIRE(CountTriples(f.where) == 1);
  const auto& t = std::get<Triple>(f.where.elements[0]);
  CHECK(t.object == Term::Literal("2019"));
}

TEST_CASE("missing closing brace is an unbalanced delimiter at end of input") {
  std::string text = testing::kWalkthroughBlock;
  text.erase(text.rfind('}'));
  try {
    ParseLogicalForm(text, TestVocab());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == ErrorCode::kUnbalancedDelimiter);
    CHECK(e.offset() == text.size());
  }
}

TEST_CASE("parse errors carry their code") {
  auto code_of = [](const std::string& text) {
    try {
      ParseLogicalForm(text, TestVocab());
    } catch (const ParseError& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code_of("") == ErrorCode::kEmptyInput);
  CHECK(code_of("   ") == ErrorCode::kEmptyInput);
  CHECK(code_of("SELECT ?x WHERE { ?x <writtenBy> ?y }") == ErrorCode::kUnknownRelationToken);
  CHECK(code_of("SELECT ?x WHERE { ?x <authoredBy> }") == ErrorCode::kUnexpectedToken);
  CHECK(code_of("SELECT ?x WHERE { ?x <authoredBy> ?y ) }") ==
        ErrorCode::kUnbalancedDelimiter);
  CHECK(code_of("SELECT ?x WHERE { }") == ErrorCode::kInvalidForm);
}

TEST_CASE("serialization is token-identical to the walkthrough block") {
  LogicalForm f = ParseLogicalForm(testing::kWalkthroughBlock, TestVocab());
  CHECK(TokenizeLogicalForm(Serialize(f, TestVocab())) ==
        TokenizeLogicalForm(testing::kWalkthroughBlock));
}

TEST_CASE("one-triple form round-trips") {
  const std::string text = "SELECT ?answer WHERE { Alan_Turing <primaryAffiliation> ?answer }";
  CHECK(Serialize(ParseLogicalForm(text, TestVocab()), TestVocab()) == text);
}

TEST_CASE("random forms round-trip byte-identically") {
  FormGenerator gen(20230917);
  for (int i = 0; i < 100; ++i) {
    LogicalForm f = gen.Next();
    std::string once = Serialize(f, TestVocab());
    LogicalForm back = ParseLogicalForm(once, TestVocab());
    CAPTURE(once);
    CHECK(back == f);
    CHECK(Serialize(back, TestVocab()) == once);
  }
}

TEST_CASE("SPARQL text reads into the same tree as the logical form") {
  const std::string s = "https://dblp.org/rdf/schema#";
  std::string sparql = "select distinct ?firstanswer ?secondanswer where { <urn:p> <" + s +
                       "authoredBy> ?firstanswer . ?x <" + s + "authoredBy> ?firstanswer . ?x <" +
                       s + "publishedIn> ?secondanswer FILTER(?x != <urn:p>) . }";
  LogicalForm a = ParseSparql(sparql, TestVocab());
  std::string lf = testing::kWalkthroughBlock;
  LogicalForm b = ParseLogicalForm(lf, TestVocab());
  // Same shape once the mention is replaced by the URI.
  auto [ma, _a] = MaskEntities(a);
  auto [mb, _b] = MaskEntities(b);
  CHECK(ma == mb);
  auto rendered = RenderTokens(a, RenderStyle::kSparql, TestVocab());
  CHECK(std::find(rendered.begin(), rendered.end(), "!=") != rendered.end());
  CHECK(std::find(rendered.begin(), rendered.end(), "<" + s + "publishedIn>") != rendered.end());
}

TEST_CASE("unknown predicates fail strictly and survive in raw mode") {
  const std::string q = "SELECT ?a WHERE { <urn:p> <https://dblp.org/rdf/schema#bibtexType> ?a }";
  CHECK_THROWS_AS(ParseSparql(q, TestVocab()), ParseError);
  LogicalForm f = ParseSparql(q, TestVocab(), {.allow_raw_predicates = true});
  CHECK(std::get<Triple>(f.where.elements[0]).relation ==
        "<https://dblp.org/rdf/schema#bibtexType>");
}

TEST_CASE("subset violations are located") {
  auto v = FindSubsetViolations("SELECT ?x WHERE {\n  ?x ?p ?o OPTIONAL { ?x ?q ?r } }");
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].token == "OPTIONAL");
  CHECK(v[0].line == 2);
  CHECK(v[0].column == 12);
  CHECK(FindSubsetViolations("SELECT ?x WHERE { ?x <urn:a> ?y }").empty());
}

TEST_CASE("variable canonicalization keeps reserved names") {
  LogicalForm f = ParseLogicalForm(
      "SELECT DISTINCT ?answer WHERE { ?paper <authoredBy> ?answer <dot> ?paper <yearOfPublication> ?yr }",
      TestVocab());
  CHECK(Serialize(CanonicalizeVariables(f), TestVocab()) ==
        "SELECT DISTINCT ?answer WHERE { ?v1 <authoredBy> ?answer <dot> ?v1 <yearOfPublication> ?v2 }");
  CHECK(IsReservedVariable("?count"));
  CHECK_FALSE(IsReservedVariable("?x"));
}

TEST_CASE("walkthrough form has one publication mention") {
  LogicalForm f = ParseLogicalForm(testing::WalkthroughForm(), TestVocab());
  auto mentions = ExtractMentions(f);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].surface == testing::kBertTitle);
  CHECK(mentions[0].inferred_kind == EntityKind::kPublication);
  CHECK(mentions[0].occurrence_index == 1);
  CHECK(mentions[0].positions.size() == 2);
}

TEST_CASE("variable-only form has no mentions") {
  LogicalForm f = ParseLogicalForm("SELECT ?x WHERE { ?x <authoredBy> ?y }", TestVocab());
  CHECK(ExtractMentions(f).empty());
  auto [masked, mentions] = MaskEntities(f);
  CHECK(masked == f);
  CHECK(mentions.empty());
}

TEST_CASE("kind vote follows the slot table") {
  // Slot votes for Some_Name, by hand:
  //   object of <authoredBy>           -> person
  //   subject of <publishedIn>         -> publication
  //   subject of <yearOfPublication>   -> publication
  // publication 2, person 1.
  LogicalForm f = ParseLogicalForm(
      "SELECT ?a WHERE { ?p <authoredBy> Some_Name <dot> Some_Name <publishedIn> ?a <dot> "
      "Some_Name <yearOfPublication> ?y }",
      TestVocab());
  CHECK(ExtractMentions(f)[0].inferred_kind == EntityKind::kPublication);

  // person 2 (object of <authoredBy>, subject of <primaryAffiliation>),
  // publication 1 (subject of <title>).
  f = ParseLogicalForm(
      "SELECT ?a WHERE { ?p <authoredBy> Some_Name <dot> Some_Name <primaryAffiliation> ?a <dot> "
      "Some_Name <title> ?t }",
      TestVocab());
  CHECK(ExtractMentions(f)[0].inferred_kind == EntityKind::kPerson);

  // person 1, publication 1: the tie goes to publication.
  f = ParseLogicalForm(
      "SELECT ?a WHERE { ?p <authoredBy> Some_Name <dot> Some_Name <publishedIn> ?a }",
      TestVocab());
  CHECK(ExtractMentions(f)[0].inferred_kind == EntityKind::kPublication);

  f = ParseLogicalForm("SELECT ?a WHERE { Alan_Turing <primaryAffiliation> ?a }", TestVocab());
  CHECK(ExtractMentions(f)[0].inferred_kind == EntityKind::kPerson);
  f = ParseLogicalForm("ASK { the_paper <yearOfPublication> 2019 }", TestVocab());
  auto m = ExtractMentions(f);
  REQUIRE(m.size() == 2);
  CHECK(m[1].inferred_kind == EntityKind::kLiteralYear);
  CHECK(m[1].surface == "2019");
}

TEST_CASE("masking replaces every occurrence of the walkthrough mention") {
  LogicalForm f = ParseLogicalForm(testing::WalkthroughForm(), TestVocab());
  auto [masked, mentions] = MaskEntities(f);
  std::string text = Serialize(masked, TestVocab());
  CHECK(text ==
        "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { <topic1> <authoredBy> ?firstanswer "
        "<dot> ?x <authoredBy> ?firstanswer <dot> ?x <publishedIn> ?secondanswer FILTER ( ?x "
        "<isnot> <topic1> ) }");
}

TEST_CASE("interleaved mentions are numbered by first occurrence") {
  // First occurrences, in rendering order: Ann_Lee (triple 1 object),
  // the_paper (triple 2 subject), 2019 (triple 3 object).
  LogicalForm f = ParseLogicalForm(
      "SELECT ?x WHERE { ?x <authoredBy> Ann_Lee <dot> the_paper <authoredBy> Ann_Lee <dot> "
      "the_paper <yearOfPublication> 2019 }",
      TestVocab());
  auto [masked, mentions] = MaskEntities(f);
  CHECK(Serialize(masked, TestVocab()) ==
        "SELECT ?x WHERE { ?x <authoredBy> <topic1> <dot> <topic2> <authoredBy> <topic1> <dot> "
        "<topic2> <yearOfPublication> <topic3> }");
  REQUIRE(mentions.size() == 3);
  CHECK(mentions[0].surface == "Ann Lee");
  CHECK(mentions[1].surface == "the paper");
  CHECK(mentions[2].surface == "2019");
}

TEST_CASE("raw tokens are masked without a parse") {
  auto tokens = TokenizeLogicalForm(
      "SELECT ?x WHERE { the_paper <authoredBy> ?x ) ( FILTER ( ?x <isnot> the_paper ) }");
  auto masked = MaskTokens(tokens, TestVocab());
  CHECK(std::count(masked.begin(), masked.end(), "<topic1>") == 2);
  auto mentions = ExtractMentionsFromTokens(tokens, TestVocab());
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].inferred_kind == EntityKind::kPublication);
}

TEST_CASE("literal helpers") {
  CHECK(IsIntegerLiteral("2019"));
  CHECK(IsIntegerLiteral("-4"));
  CHECK_FALSE(IsIntegerLiteral("20a9"));
  CHECK(IsStringLiteral("\"ACL\""));
  CHECK(IsStringLiteral("\"x\"@en"));
  CHECK(StringLiteralContent("\"a\\\"b\"@en") == "a\"b");
  CHECK(QuoteStringLiteral("a\"b") == "\"a\\\"b\"");
  CHECK(MentionTokenFromSurface("  Tim   Berners-Lee ") == "Tim_Berners-Lee");
}

}  // TEST_SUITE

}  // namespace
}  // namespace dblpqa
