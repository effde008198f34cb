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


// Python bindings. Session states and reports cross the boundary as JSON text
// and are decoded by the package wrapper.

#include <memory>
#include <set>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dblpqa/config.h"
#include "dblpqa/evalharness.h"
#include "dblpqa/logical_form.h"
#include "dblpqa/session.h"
#include "dblpqa/template_base.h"
#include "dblpqa/vocabulary.h"

namespace py = pybind11;

namespace dblpqa {
namespace {

class Engine {
 public:
  explicit Engine(const std::filesystem::path& config_path) {
    AppConfig config = LoadConfig(config_path);
    pipeline_ = BuildPipeline(config);
    sessions_ = std::make_shared<SessionManager>(pipeline_, config.session);
  }

  std::string Create(const std::string& question) { return Dump(sessions_->Create(question)); }
  std::string Get(const std::string& id) { return Dump(sessions_->Get(id)); }
  std::string SelectEntity(const std::string& id, int mention, int candidate) {
    return Dump(sessions_->SelectEntity(id, mention, candidate));
  }
  std::string SelectTemplate(const std::string& id, int index) {
    return Dump(sessions_->SelectTemplate(id, index));
  }
  std::string RunQuery(const std::string& id, const std::string& sparql) {
    return Dump(sessions_->RunQuery(id, sparql));
  }
  std::string Regenerate(const std::string& id) { return Dump(sessions_->Regenerate(id)); }

  std::vector<std::pair<std::string, std::string>> Examples() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : sessions_->Examples()) out.emplace_back(e.text, e.note);
    return out;
  }

  std::string Evaluate(const std::string& dataset, const std::string& mode, int parallelism) {
    auto items = LoadDataset(dataset);
    return ReportToJson(dblpqa::Evaluate(*pipeline_, items, ParseEvalMode(mode), parallelism))
        .dump();
  }

  const Vocabulary& vocab() const { return pipeline_->vocab; }

 private:
  std::string Dump(const SessionState& s) const { return ToJson(s, pipeline_->vocab).dump(); }

  std::shared_ptr<Pipeline> pipeline_;
  std::shared_ptr<SessionManager> sessions_;
};

py::dict RoundTrip(const std::string& dataset, const Vocabulary& vocab) {
  RoundTripReport r = CheckRoundTrip(LoadDataset(dataset), vocab);
  py::list failures;
  for (const auto& f : r.failures) {
    failures.append(py::dict(py::arg("id") = f.id, py::arg("parsed") = f.parsed,
                             py::arg("reason") = f.reason));
  }
  return py::dict(py::arg("items") = r.items, py::arg("parsed") = r.parsed,
                  py::arg("equal") = r.equal, py::arg("failures") = failures);
}

}  // namespace
}  // namespace dblpqa

PYBIND11_MODULE(_dblpqa, m) {
  using namespace dblpqa;
  m.doc() = "DBLP question answering pipeline";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object instance = py::handle(error.ptr())(std::string(e.name()) + ": " + e.what());
      instance.attr("code") = std::string(e.name());
      PyErr_SetObject(error.ptr(), instance.ptr());
    }
  });

  py::class_<Vocabulary>(m, "Vocabulary")
      .def_static("from_manifest", &Vocabulary::FromManifestFile, py::arg("path"));

  m.def("tokenize", &TokenizeLogicalForm, py::arg("text"));
  m.def("token_levenshtein", &TokenLevenshtein, py::arg("a"), py::arg("b"));
  m.def("token_edit_distance", &TokenEditDistance, py::arg("a"), py::arg("b"));
  m.def(
      "canonical_logical_form",
      [](const std::string& text, const Vocabulary& vocab) {
        return Serialize(ParseLogicalForm(text, vocab), vocab);
      },
      py::arg("text"), py::arg("vocab"));
  m.def(
      "sparql_to_logical_form",
      [](const std::string& sparql, const Vocabulary& vocab) {
        return Serialize(ParseSparql(sparql, vocab), vocab);
      },
      py::arg("sparql"), py::arg("vocab"));
  m.def(
      "score",
      [](const std::set<std::string>& predicted, const std::set<std::string>& gold) {
        Score s = ScoreAnswers(predicted, gold);
        return py::make_tuple(s.precision, s.recall, s.f1);
      },
      py::arg("predicted"), py::arg("gold"));
  m.def("round_trip", &RoundTrip, py::arg("dataset"), py::arg("vocab"));

  auto released = py::call_guard<py::gil_scoped_release>();
  py::class_<Engine>(m, "_Engine")
      .def(py::init<const std::filesystem::path&>(), py::arg("config"))
      .def("create", &Engine::Create, released)
      .def("get", &Engine::Get, released)
      .def("select_entity", &Engine::SelectEntity, released)
      .def("select_template", &Engine::SelectTemplate, released)
      .def("run_query", &Engine::RunQuery, released)
      .def("regenerate", &Engine::Regenerate, released)
      .def("examples", &Engine::Examples)
      .def("evaluate", &Engine::Evaluate, released)
      .def_property_readonly("vocab", &Engine::vocab, py::return_value_policy::reference_internal);
}
