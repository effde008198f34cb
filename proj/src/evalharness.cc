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


#include "dblpqa/evalharness.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "dblpqa/query_builder.h"

namespace dblpqa {

namespace {

using json = nlohmann::json;

[[noreturn]] void Mismatch(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchemaMismatch, where + ": " + what);
}

std::string ItemId(const json& item, size_t index) {
  if (item.contains("id")) {
    if (item["id"].is_string()) return item["id"].get<std::string>();
    if (item["id"].is_number_integer()) return std::to_string(item["id"].get<int64_t>());
  }
  Mismatch("questions[" + std::to_string(index) + "]", "missing id");
}

std::optional<std::string> TextField(const json& item, const char* key,
                                     const char* nested) {
  if (!item.contains(key)) return std::nullopt;
  const json& v = item[key];
  if (v.is_string()) return v.get<std::string>();
  if (v.is_object() && v.contains(nested) && v[nested].is_string()) {
    return v[nested].get<std::string>();
  }
  return std::nullopt;
}

std::set<std::string> GoldAnswers(const json& answer, const std::string& where) {
  std::set<std::string> out;
  if (answer.is_null()) return out;
  if (answer.is_array()) {
    for (const auto& a : answer) {
      if (!a.is_string()) Mismatch(where, "answer list entries must be strings");
      out.insert(a.get<std::string>());
    }
    return out;
  }
  if (answer.is_object()) {
    try {
      return AnswerSet(ParseResults(answer.dump()));
    } catch (const Error& e) {
      Mismatch(where, std::string("answer: ") + e.what());
    }
  }
  Mismatch(where, "answer must be a results object or a list");
}

}  // namespace

std::vector<DatasetItem> ParseDataset(std::string_view json_text) {
  json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) Mismatch("$", "not JSON");
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("questions") || !doc["questions"].is_array()) {
      Mismatch("$", "expected a \"questions\" array");
    }
    list = &doc["questions"];
  } else if (!doc.is_array()) {
    Mismatch("$", "expected an object or an array");
  }
  std::vector<DatasetItem> items;
  std::set<std::string> ids;
  for (size_t i = 0; i < list->size(); ++i) {
    const json& item = (*list)[i];
    if (!item.is_object()) Mismatch("questions[" + std::to_string(i) + "]", "not an object");
    DatasetItem d;
    d.id = ItemId(item, i);
    std::string where = "questions[" + std::to_string(i) + "] (id " + d.id + ")";
    if (!ids.insert(d.id).second) Mismatch(where, "duplicate id");
    auto q = TextField(item, "question", "string");
    if (!q) Mismatch(where, "missing question");
    d.question = *q;
    auto sparql = TextField(item, "query", "sparql");
    if (!sparql) sparql = TextField(item, "sparql", "sparql");
    if (!sparql) Mismatch(where, "missing gold query");
    d.gold_query = *sparql;
    if (item.contains("answer")) d.gold_answers = GoldAnswers(item["answer"], where);
    items.push_back(std::move(d));
  }
  return items;
}

std::vector<DatasetItem> LoadDataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot read dataset " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseDataset(buf.str());
}

std::string CanonicalAnswer(const AnswerValue& value) { return value.value; }

std::set<std::string> AnswerSet(const AnswerTable& table) {
  std::set<std::string> out;
  for (const auto& row : table.rows) {
    for (const auto& v : row) {
      if (v.kind != AnswerValue::Kind::kUnbound) out.insert(CanonicalAnswer(v));
    }
  }
  return out;
}

Score ScoreAnswers(const std::set<std::string>& predicted,
                   const std::set<std::string>& gold) {
  // The empty-set convention lives here and nowhere else.
  if (predicted.empty() && gold.empty()) return {1.0, 1.0, 1.0};
  size_t common = 0;
  for (const auto& p : predicted) common += gold.count(p);
  Score s;
  s.precision = predicted.empty() ? 0.0 : static_cast<double>(common) / predicted.size();
  s.recall = gold.empty() ? 0.0 : static_cast<double>(common) / gold.size();
  s.f1 = s.precision + s.recall == 0
             ? 0.0
             : 2 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::string_view EvalModeName(EvalMode mode) {
  return mode == EvalMode::kFull ? "full" : "gold-lf";
}

EvalMode ParseEvalMode(std::string_view name) {
  if (name == "full") return EvalMode::kFull;
  if (name == "gold-lf" || name == "gold-logical-form") return EvalMode::kGoldLogicalForm;
  throw Error(ErrorCode::kConfigError, "unknown eval mode '" + std::string(name) + "'");
}

namespace {

ItemScore EvaluateOne(const Pipeline& pipeline, const DatasetItem& item, EvalMode mode) {
  ItemScore out;
  out.id = item.id;
  std::set<std::string> predicted;
  try {
    if (mode == EvalMode::kFull) {
      SessionState s = pipeline.Run(item.question);
      for (Stage stage : AllStages()) {
        const auto& st = s.stages[stage];
        if (st.error && stage != Stage::kLinker) {
          out.error = std::string(ErrorCodeName(st.error->code));
          break;
        }
      }
      if (s.query) out.query = s.query->text;
      if (s.answers) predicted = AnswerSet(*s.answers);
    } else {
      TemplatizedQuery tq = Templatize(item.gold_query, pipeline.vocab);
      const TemplateForm* form = &tq.form;
      std::vector<TemplateMatch> matches;
      if (pipeline.templates && !pipeline.templates->empty()) {
        matches = pipeline.templates->Retrieve(tq.form, 1);
        if (matches[0].distance > 0) form = &matches[0].tmpl.form;
      }
      SparqlQuery q = Instantiate(*form, PositionalBindings(tq.bindings), pipeline.vocab,
                                  form == &tq.form ? QueryOrigin::kGenerated
                                                   : QueryOrigin::kTemplateCorrected);
      out.query = q.text;
      if (!pipeline.endpoint) throw Error(ErrorCode::kConfigError, "no endpoint");
      predicted = AnswerSet(pipeline.endpoint->Execute(q));
    }
  } catch (const Error& e) {
    out.error = e.name();
    predicted.clear();
  } catch (const std::exception& e) {
    out.error = "Internal";
    predicted.clear();
  }
  out.score = ScoreAnswers(predicted, item.gold_answers);
  return out;
}

}  // namespace

ScoreReport Evaluate(const Pipeline& pipeline, const std::vector<DatasetItem>& items,
                     EvalMode mode, int parallelism) {
  ScoreReport report;
  report.mode = mode;
  report.items.resize(items.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < items.size(); i = next++) {
      report.items[i] = EvaluateOne(pipeline, items[i], mode);
    }
  };
  int n = std::max(1, std::min<int>(parallelism, static_cast<int>(items.size())));
  std::vector<std::thread> threads;
  for (int t = 1; t < n; ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  std::sort(report.items.begin(), report.items.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& it : report.items) {
    report.macro_precision += it.score.precision;
    report.macro_recall += it.score.recall;
    report.macro_f1 += it.score.f1;
    if (!it.error.empty()) ++report.errors;
  }
  if (!report.items.empty()) {
    double n_items = static_cast<double>(report.items.size());
    report.macro_precision /= n_items;
    report.macro_recall /= n_items;
    report.macro_f1 /= n_items;
  }
  return report;
}

json ReportToJson(const ScoreReport& report) {
  json items = json::array();
  for (const auto& it : report.items) {
    items.push_back({{"id", it.id},
                     {"precision", it.score.precision},
                     {"recall", it.score.recall},
                     {"f1", it.score.f1},
                     {"error", it.error.empty() ? json(nullptr) : json(it.error)},
                     {"query", it.query}});
  }
  return {{"mode", EvalModeName(report.mode)},
          {"items", report.items.size()},
          {"errors", report.errors},
          {"macro_precision", report.macro_precision},
          {"macro_recall", report.macro_recall},
          {"macro_f1", report.macro_f1},
          {"per_item", items}};
}

std::string SummaryTable(const ScoreReport& report) {
  std::map<std::string, size_t> by_error;
  size_t below = 0;
  for (const auto& it : report.items) {
    if (!it.error.empty()) ++by_error[it.error];
    if (it.score.f1 < 1.0) ++below;
  }
  char line[160];
  std::string out;
  std::snprintf(line, sizeof(line), "mode        %s\nitems       %zu\nerrors      %zu\n",
                std::string(EvalModeName(report.mode)).c_str(), report.items.size(),
                report.errors);
  out += line;
  std::snprintf(line, sizeof(line),
                "precision   %.4f\nrecall      %.4f\nf1          %.4f\nf1 < 1      %zu\n",
                report.macro_precision, report.macro_recall, report.macro_f1, below);
  out += line;
  for (const auto& [code, n] : by_error) {
    std::snprintf(line, sizeof(line), "  %-28s %zu\n", code.c_str(), n);
    out += line;
  }
  return out;
}

RoundTripReport CheckRoundTrip(const std::vector<DatasetItem>& items,
                               const Vocabulary& vocab) {
  RoundTripReport r;
  r.items = items.size();
  for (const auto& item : items) {
    RoundTripItem rt;
    rt.id = item.id;
    try {
      TemplatizedQuery tq = Templatize(item.gold_query, vocab);
      rt.parsed = true;
      ++r.parsed;
      SparqlQuery q = Instantiate(tq.form, PositionalBindings(tq.bindings), vocab);
      std::string a = Normalize(q.text, vocab);
      std::string b = Normalize(item.gold_query, vocab);
      rt.equal = a == b;
      if (!rt.equal) rt.reason = "instantiated: " + a + " | gold: " + b;
    } catch (const Error& e) {
      rt.reason = std::string(e.name()) + ": " + e.what();
    }
    if (rt.equal) {
      ++r.equal;
    } else {
      r.failures.push_back(std::move(rt));
    }
  }
  return r;
}

}  // namespace dblpqa
