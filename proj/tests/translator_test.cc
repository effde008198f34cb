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

#include "dblpqa/translator.h"
#include "test_util.h"

namespace dblpqa {
namespace {

using testing::TestVocab;

const std::vector<QuestionPattern>& DefaultPatterns() {
  static const auto patterns =
      LoadPatternFile((testing::DataDir() / "patterns.json").string(), TestVocab());
  return patterns;
}

PatternTranslator RuleBased() { return PatternTranslator(DefaultPatterns(), TestVocab(), 2024); }

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST_SUITE("translator") {

TEST_CASE("walkthrough question yields the walkthrough form") {
  LogicalForm f = RuleBased().Translate(testing::kBertQuestion);
  CHECK(TokenizeLogicalForm(Serialize(f, TestVocab())) ==
        TokenizeLogicalForm(testing::WalkthroughForm()));
}

TEST_CASE("last-N-years question resolves against the reference year") {
  // Hand-written gold form; 2024 - 5 = 2019.
  LogicalForm gold = ParseLogicalForm(
      "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> Tim_Berners-Lee <dot> ?answer "
      "<yearOfPublication> ?y FILTER ( ?y <geq> 2019 ) }",
      TestVocab());
  CHECK(RuleBased().Translate(testing::kTblQuestion) == gold);
}

TEST_CASE("unquoted titles are taken from capitalized runs") {
  LogicalForm f = RuleBased().Translate(
      "enumerate the authors of Attention is All You Need along with other papers they "
      "published");
  auto mentions = ExtractMentions(f);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].surface == "Attention is All You Need");
}

TEST_CASE("empty and unmatched questions") {
  CHECK(CodeOf([] { RuleBased().Translate(""); }) == ErrorCode::kEmptyQuestion);
  CHECK(CodeOf([] { RuleBased().Translate("  \t"); }) == ErrorCode::kEmptyQuestion);
  CHECK(CodeOf([] { RuleBased().Translate("zzqx qqzw blorp?"); }) ==
        ErrorCode::kNoPatternMatched);
  // Cue present but no entity to fill the slot.
  CHECK(CodeOf([] { RuleBased().Translate("who are the authors of it?"); }) ==
        ErrorCode::kNoPatternMatched);
}

TEST_CASE("default patterns cover authors-of and recent papers") {
  auto listed = RuleBased().ListPatterns();
  auto has = [&](const std::string& name) {
    return std::any_of(listed.begin(), listed.end(),
                       [&](const PatternInfo& p) { return p.name == name; });
  };
  CHECK(has("authors-of"));
  CHECK(has("papers-last-n-years"));
  CHECK(listed.size() == DefaultPatterns().size());
}

TEST_CASE("pattern file validation") {
  CHECK(LoadPatterns(R"({"patterns": []})", TestVocab()).empty());
  const char* dup = R"({"patterns": [
    {"name": "a", "cues": ["authors of"], "template": "SELECT ?x WHERE { <topic1> <authoredBy> ?x }",
     "slots": {"<topic1>": "entity"}},
    {"name": "b", "cues": ["authors of"], "template": "SELECT ?y WHERE { <topic1> <authoredBy> ?y }",
     "slots": {"<topic1>": "entity"}}]})";
  CHECK(CodeOf([&] { LoadPatterns(dup, TestVocab()); }) == ErrorCode::kPatternFileError);
  const char* missing_slot = R"({"patterns": [
    {"name": "a", "cues": ["x"], "template": "SELECT ?x WHERE { <topic1> <authoredBy> <topic2> }",
     "slots": {"<topic1>": "entity"}}]})";
  CHECK(CodeOf([&] { LoadPatterns(missing_slot, TestVocab()); }) ==
        ErrorCode::kPatternFileError);
  CHECK(CodeOf([&] { LoadPatterns("[1, 2", TestVocab()); }) == ErrorCode::kPatternFileError);
  CHECK(CodeOf([&] { LoadPatternFile("/nonexistent/patterns.json", TestVocab()); }) ==
        ErrorCode::kFileUnreadable);
}

TEST_CASE("question spans") {
  QuestionSpans s = ExtractQuestionSpans(
      "Did Ada Lovelace write “Notes on the Engine” in 1999 or in the last 3 years?");
  CHECK(s.quoted == std::vector<std::string>{"Notes on the Engine"});
  CHECK(s.name_runs == std::vector<std::string>{"Ada Lovelace"});
  CHECK(s.years == std::vector<std::string>{"1999"});
  CHECK(s.years_ago == std::vector<int>{3});
  CHECK(s.cue_text.find("notes") == std::string::npos);

  // An apostrophe inside a word does not open a quote.
  s = ExtractQuestionSpans("What is Tim Berners-Lee's affiliation?");
  CHECK(s.quoted.empty());
}

TEST_CASE("model endpoint adapter") {
  ModelEndpointConfig config;
  config.endpoint_url = "http://model.test/translate";
  config.max_output_tokens = 64;
  auto answer = [](int status, std::string body) {
    return std::make_shared<testing::FakeHttp>(
        [=](const HttpRequest&) { return HttpResponse{status, body, "application/json"}; });
  };

  auto ok = answer(200, nlohmann::json{{"tokens", testing::WalkthroughForm()}}.dump());
  ModelEndpointTranslator t(config, TestVocab(), ok);
  CHECK(t.Translate(testing::kBertQuestion) ==
        ParseLogicalForm(testing::WalkthroughForm(), TestVocab()));
  auto sent = ok->log();
  REQUIRE(sent.size() == 1);
  CHECK(sent[0].method == "POST");
  CHECK(nlohmann::json::parse(sent[0].body)["question"] == testing::kBertQuestion);

  CHECK(CodeOf([&] {
          ModelEndpointTranslator(config, TestVocab(), answer(503, "")).Translate("q");
        }) == ErrorCode::kEndpointUnavailable);
  CHECK(CodeOf([&] {
          ModelEndpointTranslator(config, TestVocab(), answer(200, "{}")).Translate("q");
        }) == ErrorCode::kMalformedModelOutput);
  auto timeout = std::make_shared<testing::FakeHttp>([](const HttpRequest&) -> HttpResponse {
    throw TransportError(TransportError::Kind::kTimeout, "slow");
  });
  CHECK(CodeOf([&] { ModelEndpointTranslator(config, TestVocab(), timeout).Translate("q"); }) ==
        ErrorCode::kEndpointTimeout);

  // A missing parenthesis keeps the raw tokens for template correction.
  std::string broken = "SELECT ?x WHERE { the_paper <authoredBy> ?x FILTER ?x <isnot> a ) }";
  try {
    ModelEndpointTranslator(config, TestVocab(),
                            answer(200, nlohmann::json{{"tokens", broken}}.dump()))
        .Translate("q");
    FAIL("expected MalformedOutputError");
  } catch (const MalformedOutputError& e) {
    CHECK(e.raw_tokens() == broken);
  }

  std::string long_output;
  for (int i = 0; i < 100; ++i) long_output += "?x ";
  CHECK(CodeOf([&] {
          ModelEndpointTranslator(config, TestVocab(),
                                  answer(200, nlohmann::json{{"tokens", long_output}}.dump()))
              .Translate("q");
        }) == ErrorCode::kMalformedModelOutput);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dblpqa
