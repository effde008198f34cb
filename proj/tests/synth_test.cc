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


#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include <doctest.h>

#include "synth/datagen.h"
#include "synth/dataset.h"
#include "synth/world.h"
#include "test_util.h"

namespace dblpqa {
namespace {

namespace fs = std::filesystem;
using synth::World;

const World& TheWorld() {
  static const World world = World::Generate();
  return world;
}

size_t ChangIndex() {
  const auto& persons = TheWorld().persons();
  for (size_t i = 0; i < persons.size(); ++i) {
    if (persons[i].uri == synth::kChangPid) return i;
  }
  FAIL("second author missing from the world");
  return 0;
}

// Direct scans over the publication list, independent of the fact index.
std::set<std::string> PapersBy(size_t person) {
  std::set<std::string> out;
  for (const auto& p : TheWorld().publications()) {
    if (std::count(p.authors.begin(), p.authors.end(), person)) out.insert(p.uri);
  }
  return out;
}

std::set<std::string> Column(const AnswerTable& t, size_t i = 0) {
  std::set<std::string> out;
  for (const auto& row : t.rows) out.insert(row[i].value);
  return out;
}

AnswerTable Run(const std::string& sparql) {
  return synth::EvaluateSparql(TheWorld(), sparql, testing::TestVocab());
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<fs::path> Files(const fs::path& root) {
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root));
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST_SUITE("synth") {

TEST_CASE("world is deterministic") {
  World again = World::Generate();
  CHECK(again.facts().size() == TheWorld().facts().size());
  CHECK(again.publications().size() == TheWorld().publications().size());
  const auto* bert = TheWorld().FindPublication(synth::kBertFormal);
  REQUIRE(bert != nullptr);
  CHECK(bert->title == synth::kBertTitle);
  CHECK(bert->authors.size() == 4);
  CHECK(TheWorld().persons()[bert->authors[1]].uri == synth::kChangPid);
}

TEST_CASE("evaluator against direct scans") {
  std::string pid = synth::kChangPid;
  auto papers = Run("SELECT DISTINCT ?p WHERE { ?p <https://dblp.org/rdf/schema#authoredBy> <" +
                    pid + "> }");
  CHECK(Column(papers) == PapersBy(ChangIndex()));

  auto count = Run("SELECT (COUNT(DISTINCT ?p) AS ?count) WHERE { ?p "
                   "<https://dblp.org/rdf/schema#authoredBy> <" + pid + "> }");
  REQUIRE(count.rows.size() == 1);
  CHECK(count.rows[0][0].value == std::to_string(PapersBy(ChangIndex()).size()));

  auto limited = Run("SELECT DISTINCT ?p WHERE { ?p <https://dblp.org/rdf/schema#authoredBy> <" +
                     pid + "> } LIMIT 1");
  CHECK(limited.rows.size() == 1);

  std::set<std::string> since;
  for (const auto& p : TheWorld().publications()) {
    if (p.year >= 2019 &&
        std::count(p.authors.begin(), p.authors.end(), ChangIndex())) {
      since.insert(p.uri);
    }
  }
  auto filtered = Run(
      "SELECT DISTINCT ?p WHERE { ?p <https://dblp.org/rdf/schema#authoredBy> <" + pid +
      "> . ?p <https://dblp.org/rdf/schema#yearOfPublication> ?y FILTER (?y >= 2019) }");
  CHECK(!since.empty());
  CHECK(since.size() < PapersBy(ChangIndex()).size());
  CHECK(Column(filtered) == since);
}

TEST_CASE("union and negation") {
  const auto* bert = TheWorld().FindPublication(synth::kBertFormal);
  REQUIRE(bert != nullptr);
  size_t a = bert->authors[0];
  size_t b = bert->authors[1];
  std::string ua = TheWorld().persons()[a].uri;
  std::string ub = TheWorld().persons()[b].uri;
  std::string by = "<https://dblp.org/rdf/schema#authoredBy>";

  std::set<std::string> either = PapersBy(a);
  auto more = PapersBy(b);
  either.insert(more.begin(), more.end());
  CHECK(Column(Run("SELECT DISTINCT ?p WHERE { { ?p " + by + " <" + ua + "> } UNION { ?p " +
                   by + " <" + ub + "> } }")) == either);

  std::set<std::string> solo;
  for (const auto& p : TheWorld().publications()) {
    if (p.authors.size() == 1 && p.authors[0] == a) solo.insert(p.uri);
  }
  CHECK(!solo.empty());
  CHECK(Column(Run("SELECT DISTINCT ?p WHERE { ?p " + by + " <" + ua +
                   "> FILTER NOT EXISTS { ?p " + by + " ?o FILTER (?o != <" + ua + ">) } }")) ==
        solo);
}

TEST_CASE("ask") {
  auto truth = Run("ASK { <" + std::string(synth::kBertFormal) +
                   "> <https://dblp.org/rdf/schema#yearOfPublication> 2019 }");
  CHECK(truth.is_boolean);
  CHECK(truth.rows[0][0].value == "true");
  auto falsehood = Run(synth::KnownFalseAsk());
  CHECK(falsehood.rows[0][0].value == "false");
  CHECK_THROWS_AS(Run("SELECT ?x WHERE { ?x ?y"), ParseError);
}

TEST_CASE("dataset generation") {
  synth::DatasetOptions options;
  options.count = 300;
  auto first = synth::GenerateDataset(TheWorld(), testing::TestVocab(), options);
  auto second = synth::GenerateDataset(TheWorld(), testing::TestVocab(), options);
  REQUIRE(first.size() == 300);
  CHECK(synth::DatasetToJson(first) == synth::DatasetToJson(second));
  std::set<std::string> ids;
  for (const auto& e : first) ids.insert(e.id);
  CHECK(ids.size() == first.size());
}

TEST_CASE("committed data matches a fresh regeneration") {
  fs::path out = fs::temp_directory_path() / ("dblpqa-synth-" + std::to_string(::getpid()));
  fs::remove_all(out);
  synth::DataSummary summary = synth::WriteData(testing::DataDir() / "config.json", out);
  CHECK(summary.train_items == 7000);
  CHECK(summary.templates == 32);

  auto fresh = Files(out);
  std::vector<fs::path> committed;
  for (const auto& p : Files(testing::DataDir())) {
    std::string top = p.begin()->string();
    if (top == "synth" || top == "eval" || top == "fixtures" || p == "templates.jsonl") {
      committed.push_back(p);
    }
  }
  CHECK(fresh == committed);
  for (const auto& p : fresh) {
    CAPTURE(p.string());
    CHECK(Slurp(out / p) == Slurp(testing::DataDir() / p));
  }
  fs::remove_all(out);
}

}  // TEST_SUITE

}  // namespace
}  // namespace dblpqa
