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


// dblpqa command line: template base construction, the session server,
// one-shot questions, batch evaluation and synthetic data generation.

#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "dblpqa/config.h"
#include "dblpqa/evalharness.h"
#include "dblpqa/server.h"
#include "dblpqa/session.h"
#include "dblpqa/template_base.h"
#include "synth/datagen.h"

namespace {

using json = nlohmann::json;
using namespace dblpqa;

httplib::Server* g_server = nullptr;

void StopServer(int) {
  if (g_server != nullptr) g_server->stop();
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kFileUnreadable, "cannot write " + path);
  out << text;
}

int BuildTemplates(const std::string& dataset, const std::string& schema,
                   const std::string& out, const std::string& report_path) {
  Vocabulary vocab = Vocabulary::FromManifestFile(schema);
  std::vector<GoldItem> items;
  for (const auto& d : LoadDataset(dataset)) items.push_back({d.id, d.gold_query});
  BuildReport report;
  TemplateBase base = TemplateBase::Build(items, vocab, &report, dataset);
  base.Save(out);
  std::cout << "items " << report.items << ", parsed " << report.parsed << ", templates "
            << report.templates << ", skipped " << report.skipped.size() << "\n";
  if (!report_path.empty()) {
    json skipped = json::array();
    for (const auto& s : report.skipped) {
      skipped.push_back({{"id", s.id}, {"code", ErrorCodeName(s.code)}, {"reason", s.reason}});
    }
    WriteText(report_path, json{{"items", report.items},
                                {"parsed", report.parsed},
                                {"templates", report.templates},
                                {"skipped", skipped}}
                                   .dump(2) +
                               "\n");
  }
  return 0;
}

int RoundTrip(const std::string& dataset, const std::string& schema) {
  Vocabulary vocab = Vocabulary::FromManifestFile(schema);
  auto start = std::chrono::steady_clock::now();
  RoundTripReport r = CheckRoundTrip(LoadDataset(dataset), vocab);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& f : r.failures) std::cout << f.id << "\t" << f.reason << "\n";
  std::cout << "items " << r.items << ", parsed " << r.parsed << ", equal " << r.equal
            << ", seconds " << secs << "\n";
  return r.equal == r.parsed ? 0 : 1;
}

int Serve(AppConfig config) {
  auto pipeline = BuildPipeline(config);
  auto sessions = std::make_shared<SessionManager>(pipeline, config.session);
  httplib::Server server;
  RegisterRoutes(server, sessions, pipeline->vocab);
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  std::cerr << "listening on http://" << config.host << ":" << config.port << "\n";
  if (!server.listen(config.host, config.port)) {
    std::cerr << "cannot listen on " << config.host << ":" << config.port << "\n";
    return 1;
  }
  return 0;
}

int Ask(const AppConfig& config, const std::string& question, bool as_json) {
  auto pipeline = BuildPipeline(config);
  SessionState s = pipeline->Run(question);
  if (as_json) {
    std::cout << ToJson(s, pipeline->vocab).dump(2) << "\n";
    return 0;
  }
  std::cout << "logical form: " << s.logical_form_text << "\n";
  for (const auto& m : s.mentions) {
    std::cout << "mention '" << m.mention.surface << "' ("
              << EntityKindName(m.mention.inferred_kind) << ")\n";
    for (const auto& c : m.candidates) {
      std::cout << "  " << c.rank << ". " << c.uri << "  " << c.label << "\n";
    }
  }
  for (const auto& t : s.template_matches) {
    std::cout << "template " << t.rank << " (" << t.distance << "): " << t.tmpl.serialization
              << "\n";
  }
  if (s.query) std::cout << "query: " << s.query->text << "\n";
  for (const auto& [stage, state] : s.stages) {
    if (state.error) {
      std::cout << StageName(stage) << " error: " << ErrorCodeName(state.error->code) << ": "
                << state.error->message << "\n";
    }
  }
  if (s.answers) std::cout << ToJson(*s.answers).dump(2) << "\n";
  return 0;
}

int Eval(const AppConfig& config, const std::string& dataset, const std::string& mode,
         const std::string& report_path, int parallelism) {
  auto pipeline = BuildPipeline(config);
  ScoreReport report =
      Evaluate(*pipeline, LoadDataset(dataset), ParseEvalMode(mode), parallelism);
  if (!report_path.empty()) WriteText(report_path, ReportToJson(report).dump(2) + "\n");
  std::cout << SummaryTable(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Question answering over the DBLP knowledge graph"};
  app.require_subcommand(1);

  std::string config_path = "data/config.json";
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "Configuration file")->check(CLI::ExistingFile);
  };

  std::string dataset, schema = "data/schema.manifest", out, report;
  auto* build = app.add_subcommand("build-templates", "Build the template base");
  build->add_option("--dataset", dataset, "Training questions (JSON)")->required();
  build->add_option("--schema", schema, "Relation manifest");
  build->add_option("--out", out, "Output JSONL")->required();
  build->add_option("--report", report, "Write the skipped items as JSON");

  auto* roundtrip = app.add_subcommand("roundtrip", "Check templatize/instantiate round trips");
  roundtrip->add_option("--dataset", dataset, "Questions (JSON)")->required();
  roundtrip->add_option("--schema", schema, "Relation manifest");

  std::string host;
  int port = 0;
  auto* serve = app.add_subcommand("serve", "Run the session HTTP API");
  add_config(serve);
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port");

  std::string question;
  bool as_json = false;
  auto* ask = app.add_subcommand("ask", "Answer one question");
  add_config(ask);
  ask->add_option("question", question, "Question text")->required();
  ask->add_flag("--json", as_json, "Print the session state as JSON");

  std::string mode = "full";
  int parallelism = 4;
  auto* eval = app.add_subcommand("eval", "Score a dataset");
  add_config(eval);
  eval->add_option("--dataset", dataset, "Questions with gold answers")->required();
  eval->add_option("--mode", mode, "full or gold-lf")->check(CLI::IsMember({"full", "gold-lf"}));
  eval->add_option("--report", report, "Write the JSON report here");
  eval->add_option("-j,--parallelism", parallelism, "Items evaluated at once");

  auto* synth = app.add_subcommand("synth", "Regenerate the synthetic data and fixtures");
  add_config(synth);
  synth->add_option("--out", out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return BuildTemplates(dataset, schema, out, report);
    if (*roundtrip) return RoundTrip(dataset, schema);
    if (*synth) {
      auto s = dblpqa::synth::WriteData(config_path, out);
      std::cout << "train items " << s.train_items << ", templates " << s.templates
                << ", skipped " << s.skipped << ", fixtures " << s.fixtures << "\n";
      return 0;
    }
    AppConfig config = LoadConfig(config_path);
    if (*serve) {
      if (!host.empty()) config.host = host;
      if (port > 0) config.port = port;
      return Serve(std::move(config));
    }
    if (*ask) return Ask(config, question, as_json);
    if (*eval) return Eval(config, dataset, mode, report, parallelism);
  } catch (const Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
