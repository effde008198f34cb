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


#include "synth/datagen.h"

#include <cstring>
#include <fstream>

#include <json.hpp>

#include "dblpqa/config.h"
#include "dblpqa/evalharness.h"
#include "dblpqa/session.h"
#include "synth/dataset.h"

namespace dblpqa::synth {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string Param(const HttpRequest& r, const std::string& name) {
  for (const auto& [k, v] : r.params) {
    if (k == name) return v;
  }
  return "";
}

void WriteFile(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kFileUnreadable, "cannot write " + path.string());
  out << text;
}

}  // namespace

WorldHttpClient::WorldHttpClient(std::shared_ptr<const World> world, Vocabulary vocab)
    : world_(std::move(world)), vocab_(std::move(vocab)) {}

HttpResponse WorldHttpClient::Send(const HttpRequest& request) {
  ++requests_;
  const std::string& url = request.url;
  static const std::pair<const char*, EntityKind> kApis[] = {
      {"/search/publ/api", EntityKind::kPublication},
      {"/search/author/api", EntityKind::kPerson},
      {"/search/venue/api", EntityKind::kVenue}};
  for (const auto& [path, kind] : kApis) {
    if (url.size() >= std::strlen(path) &&
        url.compare(url.size() - std::strlen(path), std::string::npos, path) == 0) {
      std::string h = Param(request, "h");
      int hits = h.empty() ? 30 : std::stoi(h);
      return {200, world_->SearchResponse(kind, Param(request, "q"), hits), "application/json"};
    }
  }
  std::string query = Param(request, "query");
  if (query.empty()) return {400, "missing query parameter", "text/plain"};
  try {
    AnswerTable table = EvaluateSparql(*world_, query, vocab_);
    return {200, SerializeResults(table), "application/sparql-results+json"};
  } catch (const Error& e) {
    return {400, std::string("Virtuoso 37000 Error SP030: SPARQL compiler: ") + e.what(),
            "text/plain"};
  }
}

std::string KnownFalseAsk() {
  return std::string("ASK { <") + kBertFormal + "> <" + kSchema + "yearOfPublication> 2018 }";
}

std::vector<std::string> ExampleGoldQueries() {
  const std::string s = kSchema;
  const std::string bert = std::string("<") + kBertFormal + ">";
  const std::string tbl = "<https://dblp.org/pid/b/TimBernersLee>";
  return {
      "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { " + bert + " <" + s +
          "authoredBy> ?firstanswer . ?x <" + s + "authoredBy> ?firstanswer . ?x <" + s +
          "publishedIn> ?secondanswer FILTER ( ?x != " + bert + " ) }",
      "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { "
      "<https://dblp.org/rec/conf/nips/VaswaniSPUJGKP17> <" + s +
          "authoredBy> ?firstanswer . ?secondanswer <" + s +
          "authoredBy> ?firstanswer FILTER ( ?secondanswer != "
          "<https://dblp.org/rec/conf/nips/VaswaniSPUJGKP17> ) }",
      "SELECT DISTINCT ?answer WHERE { ?answer <" + s + "authoredBy> " + tbl + " . ?answer <" +
          s + "yearOfPublication> ?y FILTER ( ?y >= " + std::to_string(kReferenceYear - 5) +
          " ) }",
      "SELECT DISTINCT ?answer WHERE { " + bert + " <" + s + "yearOfPublication> ?answer }",
      "SELECT DISTINCT ?answer WHERE { " + tbl + " <" + s + "primaryAffiliation> ?answer }",
  };
}

DataSummary WriteData(const fs::path& config_path, const fs::path& out_root) {
  AppConfig config = ParseConfig(
      [&] {
        std::ifstream in(config_path);
        if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot read " + config_path.string());
        return std::string(std::istreambuf_iterator<char>(in), {});
      }(),
      fs::absolute(config_path).parent_path());
  Vocabulary vocab = Vocabulary::FromManifestFile(config.schema_manifest.string());
  auto world = std::make_shared<const World>(World::Generate());
  DataSummary summary;

  // Training split and the template base built from it.
  DatasetOptions train_options;
  auto train = GenerateDataset(*world, vocab, train_options);
  WriteFile(out_root / "synth" / "train.json", DatasetToJson(train).dump(1) + "\n");
  std::vector<GoldItem> gold;
  for (const auto& e : train) gold.push_back({e.id, e.sparql});
  BuildReport report;
  TemplateBase base = TemplateBase::Build(gold, vocab, &report, "synth/train.json");
  WriteFile(out_root / "templates.jsonl", base.SaveToString());
  summary.train_items = train.size();
  summary.templates = base.size();
  summary.skipped = report.skipped.size();

  // Held-out evaluation items.
  DatasetOptions gold_options;
  gold_options.count = 50;
  gold_options.seed = 11;
  gold_options.id_prefix = "G";
  gold_options.with_answers = true;
  gold_options.subset_only = true;
  auto gold50 = GenerateDataset(*world, vocab, gold_options);
  WriteFile(out_root / "eval" / "gold50.json", DatasetToJson(gold50).dump(1) + "\n");

  std::vector<DatasetEntry> examples;
  auto example_queries = ExampleGoldQueries();
  for (size_t i = 0; i < DefaultExamples().size(); ++i) {
    DatasetEntry e;
    e.id = "E" + std::to_string(i + 1);
    e.family = "example";
    e.question = DefaultExamples()[i].text;
    e.sparql = example_queries[i];
    e.answer = EvaluateSparql(*world, e.sparql, vocab);
    examples.push_back(std::move(e));
  }
  WriteFile(out_root / "eval" / "examples.json", DatasetToJson(examples).dump(1) + "\n");

  // Record every exchange the replay tests and the demo sessions make.
  fs::path fixtures = out_root / "fixtures";
  fs::remove_all(fixtures);
  fs::create_directories(fixtures);
  config.templates = out_root / "templates.jsonl";
  config.linker.fixture_mode = FixtureMode::kRecord;
  config.linker.fixture_dir = fixtures;
  config.endpoint.fixture_mode = FixtureMode::kRecord;
  config.endpoint.fixture_dir = fixtures;
  auto http = std::make_shared<WorldHttpClient>(world, vocab);
  std::shared_ptr<const Pipeline> pipeline = BuildPipeline(config, http);
  SessionManager sessions(pipeline, config.session);
  for (const auto& example : DefaultExamples()) {
    SessionState s = sessions.Create(example.text);
    for (size_t m = 0; m < s.mentions.size(); ++m) {
      for (size_t c = 0; c < s.mentions[m].candidates.size(); ++c) {
        s = sessions.SelectEntity(s.id, static_cast<int>(m), static_cast<int>(c));
        for (size_t t = 0; t < s.template_matches.size(); ++t) {
          sessions.SelectTemplate(s.id, static_cast<int>(t));
        }
      }
      if (!s.mentions[m].candidates.empty()) s = sessions.SelectEntity(s.id, static_cast<int>(m), 0);
    }
    if (!s.template_matches.empty()) s = sessions.SelectTemplate(s.id, 0);
    s = sessions.Regenerate(s.id);
    if (s.query && s.query->text.find("LIMIT") == std::string::npos) {
      sessions.RunQuery(s.id, s.query->text + " LIMIT 1");
    }
  }
  {
    SessionState s = sessions.Create(DefaultExamples()[0].text);
    sessions.RunQuery(s.id, "SELECT ?x WHERE { ?x ?y");
  }
  pipeline->linker->Search(EntityKind::kPublication, "zzqx qqzw");
  pipeline->endpoint->Execute(KnownFalseAsk());
  auto eval_items = ParseDataset(DatasetToJson(gold50).dump());
  Evaluate(*pipeline, eval_items, EvalMode::kGoldLogicalForm, 1);
  Evaluate(*pipeline, ParseDataset(DatasetToJson(examples).dump()), EvalMode::kFull, 1);

  for (const auto& entry : fs::directory_iterator(fixtures)) {
    if (entry.is_regular_file()) ++summary.fixtures;
  }
  return summary;
}

}  // namespace dblpqa::synth
