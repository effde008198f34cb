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

#include "dblpqa/evalharness.h"
#include "dblpqa/template_base.h"
#include "test_util.h"

namespace dblpqa {
namespace {

using testing::TestVocab;

// Textbook full-matrix Levenshtein, kept separate from the library code.
size_t OracleDistance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<size_t>> d(a.size() + 1, std::vector<size_t>(b.size() + 1));
  for (size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
  }
  return d[a.size()][b.size()];
}

const TemplateBase& CommittedBase() {
  static const TemplateBase base =
      TemplateBase::Load((testing::DataDir() / "templates.jsonl").string(), TestVocab());
  return base;
}

TemplateForm MaskedWalkthrough() {
  return MaskEntities(ParseLogicalForm(testing::WalkthroughForm(), TestVocab())).first;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_SUITE("template_base") {

TEST_CASE("edit distance examples") {
  using V = std::vector<std::string>;
  CHECK(TokenEditDistance(V{"a", "b"}, V{"a", "b"}) == 0.0);
  CHECK(TokenEditDistance(V{"SELECT", "?x"}, V{"SELECT", "?y"}) == 0.5);
  CHECK(TokenEditDistance(V{}, V{"a", "b", "c", "d"}) == 1.0);
  CHECK(TokenEditDistance(V{}, V{}) == 0.0);
  CHECK(TokenLevenshtein(V{"k", "i", "t", "t", "e", "n"}, V{"s", "i", "t", "t", "i", "n", "g"}) ==
        3);
}

TEST_CASE("edit distance matches the oracle on random pairs") {
  std::mt19937 gen(4618);
  const std::vector<std::string> alphabet = {"{", "}", "?x", "<dot>", "<topic1>", "<authoredBy>"};
  auto random_seq = [&] {
    std::vector<std::string> s(gen() % 13);
    for (auto& t : s) t = alphabet[gen() % alphabet.size()];
    return s;
  };
  for (int i = 0; i < 1000; ++i) {
    auto a = random_seq(), b = random_seq();
    size_t expected = OracleDistance(a, b);
    REQUIRE(TokenLevenshtein(a, b) == expected);
    size_t longest = std::max(a.size(), b.size());
    REQUIRE(TokenEditDistance(a, b) ==
            (longest == 0 ? 0.0 : static_cast<double>(expected) / static_cast<double>(longest)));
  }
}

TEST_CASE("committed base agrees with the training split") {
  auto items = LoadDataset((testing::DataDir() / "synth" / "train.json").string());
  CHECK(items.size() == 7000);
  std::vector<GoldItem> gold;
  for (const auto& i : items) gold.push_back({i.id, i.gold_query});
  BuildReport report;
  TemplateBase built = TemplateBase::Build(gold, TestVocab(), &report, "synth/train.json");
  CHECK(report.items == 7000);
  CHECK(report.parsed + report.skipped.size() == report.items);
  int frequency = 0;
  for (const auto& t : built.templates()) frequency += t.frequency;
  CHECK(frequency == static_cast<int>(report.parsed));
  // Frozen at generation time.
  CHECK(report.parsed == 6890);
  CHECK(built.size() == 32);
  CHECK(built.SaveToString() == CommittedBase().SaveToString());
}

TEST_CASE("duplicates collapse and unknown predicates are skipped") {
  const std::string q =
      "SELECT ?a WHERE { <urn:p> <https://dblp.org/rdf/schema#authoredBy> ?a }";
  const std::string bad =
      "SELECT ?a WHERE { <urn:p> <https://dblp.org/rdf/schema#bibtexType> ?a }";
  BuildReport report;
  TemplateBase base = TemplateBase::Build({{"1", q}, {"2", q}, {"3", q}, {"4", bad}}, TestVocab(),
                                          &report);
  REQUIRE(base.size() == 1);
  CHECK(base.templates()[0].frequency == 3);
  CHECK(base.templates()[0].source_ids == std::vector<std::string>{"1", "2", "3"});
  CHECK(base.templates()[0].placeholder_count == 1);
  REQUIRE(report.skipped.size() == 1);
  CHECK(report.skipped[0].id == "4");
  CHECK(report.skipped[0].code == ErrorCode::kUnknownRelationToken);
}

TEST_CASE("variable names do not split templates") {
  const std::string s = "https://dblp.org/rdf/schema#";
  TemplateBase base = TemplateBase::Build(
      {{"1", "SELECT ?a WHERE { ?p <" + s + "authoredBy> <urn:x> . ?p <" + s + "title> ?a }"},
       {"2", "select ?a where { ?paper <" + s + "authoredBy> <urn:y> . ?paper <" + s +
                 "title> ?a . }"}},
      TestVocab());
  CHECK(base.size() == 1);
}

TEST_CASE("walkthrough form retrieves its own template first") {
  auto matches = CommittedBase().Retrieve(MaskedWalkthrough(), 5);
  REQUIRE(matches.size() == 5);
  CHECK(matches[0].rank == 1);
  CHECK(matches[0].distance == 0.0);
  CHECK(matches[0].tmpl.serialization.find("<topic1>") != std::string::npos);
  for (size_t i = 1; i < matches.size(); ++i) {
    CHECK(matches[i - 1].distance <= matches[i].distance);
    CHECK(matches[i].rank == static_cast<int>(i + 1));
  }
}

TEST_CASE("single-template base") {
  TemplateForm f = MaskedWalkthrough();
  Template t;
  t.form = f;
  t.serialization = Serialize(f, TestVocab());
  t.placeholder_count = 1;
  t.frequency = 1;
  TemplateBase base({t}, TestVocab());
  auto m = base.Retrieve(f, 3);
  REQUIRE(m.size() == 1);
  CHECK(m[0].distance == 0.0);
  CHECK(m[0].rank == 1);
}

TEST_CASE("a dropped parenthesis still ranks the right template first") {
  auto tokens = TokenizeLogicalForm(testing::WalkthroughForm());
  auto close = std::find(tokens.rbegin(), tokens.rend(), ")");
  tokens.erase(std::next(close).base());
  auto masked = MaskTokens(tokens, TestVocab());
  auto matches = CommittedBase().RetrieveTokens(masked, 3);
  REQUIRE(matches.size() == 3);

  // Exhaustive scan as the oracle.
  auto query = CanonicalizeVariableTokens(masked);
  double best = 2;
  std::string best_text;
  for (const auto& t : CommittedBase().templates()) {
    double d = TokenEditDistance(query, CommittedBase().MatchTokens(t.form));
    if (d < best) {
      best = d;
      best_text = t.serialization;
    }
  }
  CHECK(matches[0].distance == best);
  CHECK(matches[0].distance > 0);
  CHECK(matches[0].tmpl.serialization == best_text);
  CHECK(matches[0].tmpl.form == CommittedBase().Retrieve(MaskedWalkthrough(), 1)[0].tmpl.form);
}

TEST_CASE("retrieval preconditions") {
  CHECK(CodeOf([] { TemplateBase().Retrieve(MaskedWalkthrough(), 3); }) ==
        ErrorCode::kEmptyTemplateBase);
  CHECK(CodeOf([] { CommittedBase().Retrieve(MaskedWalkthrough(), 0); }) ==
        ErrorCode::kConfigError);
}

TEST_CASE("save and load") {
  std::string text = CommittedBase().SaveToString();
  TemplateBase again = TemplateBase::LoadFromString(text, TestVocab());
  CHECK(again.SaveToString() == text);
  CHECK(again.item_count() == 7000);
  CHECK(CodeOf([] { TemplateBase::LoadFromString("{\"format\": \"other\"}\n", TestVocab()); }) ==
        ErrorCode::kSchemaMismatch);
  std::string header = text.substr(0, text.find('\n') + 1);
  CHECK(CodeOf([&] {
          TemplateBase::LoadFromString(header + "{\"template\": \"SELECT ?x\"}\n", TestVocab());
        }) == ErrorCode::kSchemaMismatch);
  CHECK(CodeOf([] { TemplateBase::Load("/nonexistent.jsonl", TestVocab()); }) ==
        ErrorCode::kFileUnreadable);
}

TEST_CASE("templatize splits a query into template and bindings") {
  const std::string s = "https://dblp.org/rdf/schema#";
  TemplatizedQuery tq = Templatize("ASK { <urn:p> <" + s + "yearOfPublication> 2019 }",
                                   TestVocab());
  CHECK(Serialize(tq.form, TestVocab()) == "ASK { <topic1> <yearOfPublication> <topic2> }");
  CHECK(tq.bindings == std::vector<Term>{Term::Uri("urn:p"), Term::Literal("2019")});
  CHECK(CountPlaceholders(tq.form) == 2);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dblpqa
