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


// Human-on-the-loop sessions: the four-step pipeline with per-stage results
// that callers may override, recomputing only what lies downstream.

#ifndef DBLPQA_SESSION_H_
#define DBLPQA_SESSION_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "dblpqa/entity_linker.h"
#include "dblpqa/error.h"
#include "dblpqa/logical_form.h"
#include "dblpqa/query_builder.h"
#include "dblpqa/sparql_client.h"
#include "dblpqa/template_base.h"
#include "dblpqa/translator.h"

namespace dblpqa {

enum class Stage { kTranslator, kLinker, kTemplate, kQuery, kExecution };
enum class StageStatus { kPending, kOk, kError, kSkipped };

std::string_view StageName(Stage stage);
std::string_view StageStatusName(StageStatus status);
const std::vector<Stage>& AllStages();

struct StageError {
  ErrorCode code = ErrorCode::kInvalidForm;
  std::string message;

  bool operator==(const StageError&) const = default;
};

struct StageState {
  StageStatus status = StageStatus::kPending;
  std::optional<StageError> error;

  bool operator==(const StageState&) const = default;
};

struct MentionState {
  EntityMention mention;
  std::vector<EntityCandidate> candidates;
  int selected_index = -1;  // -1: nothing to select
  std::optional<Term> literal;
  std::optional<StageError> error;

  // The value bound to this mention's placeholder, if any.
  std::optional<Term> Value() const;

  bool operator==(const MentionState&) const = default;
};

struct SessionState {
  std::string id;
  std::string question;

  std::optional<LogicalForm> logical_form;
  std::string logical_form_text;  // canonical, or the raw model tokens
  std::optional<std::string> parse_diagnostic;

  std::vector<MentionState> mentions;

  std::optional<TemplateForm> masked_form;  // when the generated form parsed
  std::vector<TemplateMatch> template_matches;
  int selected_template = -1;

  std::optional<SparqlQuery> query;
  std::vector<Diagnostic> query_warnings;
  std::optional<AnswerTable> answers;

  std::map<Stage, StageState> stages;
  int64_t revision = 0;
};

struct ExampleQuestion {
  std::string text;
  std::string note;
};

const std::vector<ExampleQuestion>& DefaultExamples();

// Everything the pipeline needs. The pointed-to services are shared,
// immutable and safe to call concurrently.
struct Pipeline {
  Vocabulary vocab;
  std::shared_ptr<const Translator> translator;
  std::shared_ptr<const EntityLinker> linker;
  std::shared_ptr<const TemplateBase> templates;
  std::shared_ptr<const SparqlClient> endpoint;
  int k = 5;
  int max_candidates = 5;

  // Runs every stage on a fresh state. Throws only EmptyQuestion.
  SessionState Run(std::string_view question) const;

  // Stage entry points, each continuing through execution.
  void RunFromLinker(SessionState& state) const;
  void RunFromTemplate(SessionState& state) const;
  void RunFromQuery(SessionState& state) const;
  void RunExecution(SessionState& state) const;
};

struct SessionLimits {
  std::chrono::seconds ttl{3600};
  size_t max_sessions = 1000;
};

class SessionManager {
 public:
  SessionManager(std::shared_ptr<const Pipeline> pipeline, SessionLimits limits = {},
                 std::vector<ExampleQuestion> examples = DefaultExamples());

  // Throws EmptyQuestion; all pipeline failures stay inside the state.
  SessionState Create(std::string_view question);
  // The following throw UnknownSession; selections throw IndexOutOfRange
  // and leave the state untouched.
  SessionState Get(const std::string& id);
  SessionState SelectEntity(const std::string& id, int mention_index, int candidate_index);
  SessionState SelectTemplate(const std::string& id, int template_index);
  SessionState RunQuery(const std::string& id, std::string_view sparql);
  SessionState Regenerate(const std::string& id);

  const std::vector<ExampleQuestion>& Examples() const { return examples_; }
  size_t size() const;

 private:
  struct Entry {
    std::mutex mu;
    SessionState state;
    std::chrono::steady_clock::time_point last_access;
  };

  std::shared_ptr<Entry> Find(const std::string& id);
  void EvictLocked(std::chrono::steady_clock::time_point now);
  std::string NewId();

  std::shared_ptr<const Pipeline> pipeline_;
  SessionLimits limits_;
  std::vector<ExampleQuestion> examples_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
};

// JSON views served by the HTTP API.
nlohmann::json ToJson(const SessionState& state, const Vocabulary& vocab);
nlohmann::json ToJson(const AnswerTable& table);
nlohmann::json ToJson(const EntityCandidate& candidate);
nlohmann::json ErrorJson(const Error& error);

}  // namespace dblpqa

#endif  // DBLPQA_SESSION_H_
