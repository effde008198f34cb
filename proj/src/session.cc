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


#include "dblpqa/session.h"

#include <algorithm>
#include <cctype>
#include <future>
#include <random>

namespace dblpqa {

namespace {

using json = nlohmann::json;

StageError ToStageError(const Error& e) { return {e.code(), e.what()}; }

void SetStage(SessionState& s, Stage stage, StageStatus status,
              std::optional<StageError> error = std::nullopt) {
  s.stages[stage] = {status, std::move(error)};
}

void SkipFrom(SessionState& s, Stage first) {
  bool on = false;
  for (Stage stage : AllStages()) {
    if (stage == first) on = true;
    if (on) SetStage(s, stage, StageStatus::kSkipped);
  }
}

// Runs fn; any exception becomes the stage's error. Returns success.
template <typename Fn>
bool Guarded(SessionState& s, Stage stage, Fn&& fn) {
  try {
    fn();
    SetStage(s, stage, StageStatus::kOk);
    return true;
  } catch (const Error& e) {
    SetStage(s, stage, StageStatus::kError, ToStageError(e));
  } catch (const std::exception& e) {
    SetStage(s, stage, StageStatus::kError, StageError{ErrorCode::kInternal, e.what()});
  }
  return false;
}

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

MentionState ResolveMention(const EntityMention& mention, const EntityLinker* linker,
                            int max_candidates) {
  MentionState m;
  m.mention = mention;
  try {
    bool literal = mention.term.kind != Term::Kind::kMention ||
                   IsLiteralKind(mention.inferred_kind);
    if (literal) {
      m.literal = MatchLiteral(mention);
    } else {
      if (!linker) throw Error(ErrorCode::kConfigError, "no entity linker configured");
      m.candidates = linker->Link(mention);
      if (max_candidates > 0 && m.candidates.size() > static_cast<size_t>(max_candidates)) {
        m.candidates.resize(max_candidates);
      }
      m.selected_index = m.candidates.empty() ? -1 : 0;
    }
  } catch (const Error& e) {
    m.error = ToStageError(e);
  } catch (const std::exception& e) {
    m.error = StageError{ErrorCode::kInternal, e.what()};
  }
  return m;
}

std::string_view TermKindName(Term::Kind kind) {
  switch (kind) {
    case Term::Kind::kVariable: return "variable";
    case Term::Kind::kMention: return "mention";
    case Term::Kind::kLiteral: return "literal";
    case Term::Kind::kUri: return "uri";
    case Term::Kind::kPlaceholder: return "placeholder";
  }
  return "mention";
}

json StageErrorJson(const std::optional<StageError>& e) {
  if (!e) return nullptr;
  return {{"code", ErrorCodeName(e->code)}, {"message", e->message}};
}

json AnswerValueJson(const AnswerValue& v) {
  switch (v.kind) {
    case AnswerValue::Kind::kUri: return {{"type", "uri"}, {"value", v.value}};
    case AnswerValue::Kind::kBoolean: return {{"type", "boolean"}, {"value", v.value}};
    case AnswerValue::Kind::kUnbound: return {{"type", "unbound"}, {"value", nullptr}};
    case AnswerValue::Kind::kLiteral: {
      json out = {{"type", "literal"}, {"value", v.value}};
      if (!v.datatype.empty()) out["datatype"] = v.datatype;
      if (!v.lang.empty()) out["lang"] = v.lang;
      return out;
    }
  }
  return nullptr;
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kTranslator: return "translator";
    case Stage::kLinker: return "linker";
    case Stage::kTemplate: return "template";
    case Stage::kQuery: return "query";
    case Stage::kExecution: return "execution";
  }
  return "translator";
}

std::string_view StageStatusName(StageStatus status) {
  switch (status) {
    case StageStatus::kPending: return "pending";
    case StageStatus::kOk: return "ok";
    case StageStatus::kError: return "error";
    case StageStatus::kSkipped: return "skipped";
  }
  return "pending";
}

const std::vector<Stage>& AllStages() {
  static const std::vector<Stage> kStages = {Stage::kTranslator, Stage::kLinker,
                                             Stage::kTemplate, Stage::kQuery,
                                             Stage::kExecution};
  return kStages;
}

std::optional<Term> MentionState::Value() const {
  if (literal) return literal;
  if (selected_index >= 0 && static_cast<size_t>(selected_index) < candidates.size()) {
    return Term::Uri(candidates[selected_index].uri);
  }
  return std::nullopt;
}

const std::vector<ExampleQuestion>& DefaultExamples() {
  static const std::vector<ExampleQuestion> kExamples = {
      {"please enumerate the authors of 'BERT: Pre-training of Deep Bidirectional "
       "Transformers for Language Understanding' along with the venues where they "
       "have published other papers.",
       "authors of a paper and the venues of their other papers"},
      {"enumerate the authors of Attention is All You Need along with other papers "
       "they published",
       "authors of a paper and their other papers"},
      {"what papers has Tim Berners-Lee published in the last 5 years?",
       "recent papers of a person"},
      {"when was 'BERT: Pre-training of Deep Bidirectional Transformers for Language "
       "Understanding' published?",
       "publication year"},
      {"what is the primary affiliation of Tim Berners-Lee?", "affiliation of a person"},
  };
  return kExamples;
}

// ---------------------------------------------------------------------------
// Pipeline.

SessionState Pipeline::Run(std::string_view question) const {
  std::string q = Trim(question);
  if (q.empty()) throw Error(ErrorCode::kEmptyQuestion, "empty question");
  SessionState s;
  s.question = q;
  for (Stage stage : AllStages()) SetStage(s, stage, StageStatus::kPending);

  bool recoverable = false;
  bool ok = Guarded(s, Stage::kTranslator, [&] {
    if (!translator) throw Error(ErrorCode::kConfigError, "no translator configured");
    try {
      s.logical_form = translator->Translate(q);
      s.logical_form_text = Serialize(*s.logical_form, vocab);
    } catch (const MalformedOutputError& e) {
      // Raw tokens still go through linking and template correction.
      s.logical_form_text = e.raw_tokens();
      s.parse_diagnostic = e.what();
      recoverable = !e.raw_tokens().empty();
      throw;
    }
  });
  if (!ok && !recoverable) {
    SkipFrom(s, Stage::kLinker);
    return s;
  }
  RunFromLinker(s);
  return s;
}

void Pipeline::RunFromLinker(SessionState& s) const {
  std::vector<EntityMention> mentions;
  bool extracted = Guarded(s, Stage::kLinker, [&] {
    mentions = s.logical_form
                   ? ExtractMentions(*s.logical_form)
                   : ExtractMentionsFromTokens(TokenizeLogicalForm(s.logical_form_text),
                                               vocab);
  });
  if (!extracted) {
    SkipFrom(s, Stage::kTemplate);
    return;
  }
  s.mentions.clear();
  const EntityLinker* l = linker.get();
  if (mentions.size() <= 1) {
    for (const auto& m : mentions) s.mentions.push_back(ResolveMention(m, l, max_candidates));
  } else {
    std::vector<std::future<MentionState>> pending;
    for (const auto& m : mentions) {
      pending.push_back(std::async(std::launch::async, ResolveMention, std::cref(m), l,
                                   max_candidates));
    }
    for (auto& f : pending) s.mentions.push_back(f.get());
  }
  // Linker failures are per mention; the stage reports the first one and the
  // pipeline goes on.
  for (const auto& m : s.mentions) {
    if (m.error) {
      SetStage(s, Stage::kLinker, StageStatus::kError, m.error);
      break;
    }
  }
  RunFromTemplate(s);
}

void Pipeline::RunFromTemplate(SessionState& s) const {
  s.template_matches.clear();
  s.selected_template = -1;
  s.masked_form.reset();
  bool ok = Guarded(s, Stage::kTemplate, [&] {
    if (!templates) throw Error(ErrorCode::kEmptyTemplateBase, "no template base loaded");
    if (s.logical_form) {
      s.masked_form = MaskEntities(*s.logical_form).first;
      s.template_matches = templates->Retrieve(*s.masked_form, k);
    } else {
      s.template_matches = templates->RetrieveTokens(
          MaskTokens(TokenizeLogicalForm(s.logical_form_text), vocab), k);
    }
    s.selected_template = s.template_matches.empty() ? -1 : 0;
  });
  if (!ok) {
    if (!(s.query && s.query->origin == QueryOrigin::kUserEdited)) {
      s.query.reset();
      s.query_warnings.clear();
      s.answers.reset();
    }
    SkipFrom(s, Stage::kQuery);
    return;
  }
  RunFromQuery(s);
}

void Pipeline::RunFromQuery(SessionState& s) const {
  if (s.query && s.query->origin == QueryOrigin::kUserEdited) {
    // Edited text is kept until the caller regenerates.
    RunExecution(s);
    return;
  }
  s.query.reset();
  s.query_warnings.clear();
  bool ok = Guarded(s, Stage::kQuery, [&] {
    if (s.selected_template < 0 ||
        static_cast<size_t>(s.selected_template) >= s.template_matches.size()) {
      throw Error(ErrorCode::kEmptyTemplateBase, "no template selected");
    }
    std::vector<Binding> bindings;
    for (size_t i = 0; i < s.mentions.size(); ++i) {
      if (auto v = s.mentions[i].Value()) {
        bindings.push_back({PlaceholderToken(static_cast<int>(i) + 1), *v});
      }
    }
    const TemplateMatch& match = s.template_matches[s.selected_template];
    bool use_generated = s.selected_template == 0 && s.masked_form && match.distance == 0;
    if (use_generated) {
      s.query = Instantiate(*s.masked_form, bindings, vocab, QueryOrigin::kGenerated);
    } else {
      s.query = Instantiate(match.tmpl.form, bindings, vocab,
                            QueryOrigin::kTemplateCorrected);
    }
    s.query_warnings = Validate(s.query->text, vocab);
  });
  if (!ok) {
    s.answers.reset();
    SetStage(s, Stage::kExecution, StageStatus::kSkipped);
    return;
  }
  RunExecution(s);
}

void Pipeline::RunExecution(SessionState& s) const {
  s.answers.reset();
  if (!s.query) {
    SetStage(s, Stage::kExecution, StageStatus::kSkipped);
    return;
  }
  Guarded(s, Stage::kExecution, [&] {
    if (!endpoint) throw Error(ErrorCode::kConfigError, "no SPARQL endpoint configured");
    s.answers = endpoint->Execute(*s.query);
  });
}

// ---------------------------------------------------------------------------
// Session manager.

SessionManager::SessionManager(std::shared_ptr<const Pipeline> pipeline,
                               SessionLimits limits, std::vector<ExampleQuestion> examples)
    : pipeline_(std::move(pipeline)), limits_(limits), examples_(std::move(examples)) {
  if (!pipeline_) throw Error(ErrorCode::kConfigError, "session manager needs a pipeline");
  if (limits_.max_sessions == 0) {
    throw Error(ErrorCode::kConfigError, "max_sessions must be positive");
  }
}

std::string SessionManager::NewId() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int word = 0; word < 2; ++word) {
    uint64_t bits = rng();
    for (int i = 0; i < 16; ++i, bits >>= 4) id.push_back(kHex[bits & 0xf]);
  }
  return id;
}

void SessionManager::EvictLocked(std::chrono::steady_clock::time_point now) {
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    if (now - it->second->last_access > limits_.ttl) {
      it = sessions_.erase(it);
    } else {
      ++it;
    }
  }
  while (sessions_.size() >= limits_.max_sessions) {
    auto oldest = std::min_element(sessions_.begin(), sessions_.end(),
                                   [](const auto& a, const auto& b) {
                                     return a.second->last_access < b.second->last_access;
                                   });
    sessions_.erase(oldest);
  }
}

std::shared_ptr<SessionManager::Entry> SessionManager::Find(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  auto now = std::chrono::steady_clock::now();
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::kUnknownSession, "unknown session " + id);
  if (now - it->second->last_access > limits_.ttl) {
    sessions_.erase(it);
    throw Error(ErrorCode::kUnknownSession, "session " + id + " expired");
  }
  it->second->last_access = now;
  return it->second;
}

size_t SessionManager::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

SessionState SessionManager::Create(std::string_view question) {
  SessionState state = pipeline_->Run(question);
  auto entry = std::make_shared<Entry>();
  std::lock_guard<std::mutex> lock(mu_);
  auto now = std::chrono::steady_clock::now();
  EvictLocked(now);
  std::string id;
  do {
    id = NewId();
  } while (sessions_.count(id));
  state.id = id;
  state.revision = 1;
  entry->state = state;
  entry->last_access = now;
  sessions_.emplace(id, std::move(entry));
  return state;
}

SessionState SessionManager::Get(const std::string& id) {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  return entry->state;
}

SessionState SessionManager::SelectEntity(const std::string& id, int mention_index,
                                          int candidate_index) {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  SessionState& s = entry->state;
  if (mention_index < 0 || static_cast<size_t>(mention_index) >= s.mentions.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "mention index " + std::to_string(mention_index) + " out of range");
  }
  MentionState& m = s.mentions[mention_index];
  if (candidate_index < 0 || static_cast<size_t>(candidate_index) >= m.candidates.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "candidate index " + std::to_string(candidate_index) + " out of range");
  }
  m.selected_index = candidate_index;
  pipeline_->RunFromQuery(s);
  ++s.revision;
  return s;
}

SessionState SessionManager::SelectTemplate(const std::string& id, int template_index) {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  SessionState& s = entry->state;
  if (template_index < 0 ||
      static_cast<size_t>(template_index) >= s.template_matches.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "template index " + std::to_string(template_index) + " out of range");
  }
  s.selected_template = template_index;
  pipeline_->RunFromQuery(s);
  ++s.revision;
  return s;
}

SessionState SessionManager::RunQuery(const std::string& id, std::string_view sparql) {
  auto entry = Find(id);
  if (Trim(sparql).empty()) throw Error(ErrorCode::kEmptyInput, "empty query text");
  std::lock_guard<std::mutex> lock(entry->mu);
  SessionState& s = entry->state;
  s.query = SparqlQuery{std::string(sparql), QueryOrigin::kUserEdited};
  s.query_warnings = Validate(sparql, pipeline_->vocab);
  SetStage(s, Stage::kQuery, StageStatus::kOk);
  pipeline_->RunExecution(s);
  ++s.revision;
  return s;
}

SessionState SessionManager::Regenerate(const std::string& id) {
  auto entry = Find(id);
  std::lock_guard<std::mutex> lock(entry->mu);
  SessionState& s = entry->state;
  s.query.reset();
  if (s.stages[Stage::kTemplate].status == StageStatus::kOk) {
    pipeline_->RunFromQuery(s);
  } else {
    s.query_warnings.clear();
    s.answers.reset();
    SkipFrom(s, Stage::kQuery);
  }
  ++s.revision;
  return s;
}

// ---------------------------------------------------------------------------
// JSON.

json ToJson(const EntityCandidate& c) {
  return {{"uri", c.uri},
          {"label", c.label},
          {"kind", EntityKindName(c.kind)},
          {"score", c.score},
          {"rank", c.rank}};
}

json ToJson(const AnswerTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& v : row) r.push_back(AnswerValueJson(v));
    rows.push_back(std::move(r));
  }
  return {{"columns", table.columns},
          {"rows", rows},
          {"truncated", table.truncated},
          {"is_boolean", table.is_boolean}};
}

json ErrorJson(const Error& error) {
  return {{"error", {{"code", error.name()}, {"message", error.what()}}}};
}

json ToJson(const SessionState& s, const Vocabulary& vocab) {
  json mentions = json::array();
  for (size_t i = 0; i < s.mentions.size(); ++i) {
    const MentionState& m = s.mentions[i];
    json candidates = json::array();
    for (const auto& c : m.candidates) candidates.push_back(ToJson(c));
    mentions.push_back(
        {{"index", i},
         {"surface", m.mention.surface},
         {"term", {{"kind", TermKindName(m.mention.term.kind)}, {"text", m.mention.term.text}}},
         {"placeholder", PlaceholderToken(m.mention.occurrence_index)},
         {"inferred_kind", EntityKindName(m.mention.inferred_kind)},
         {"candidates", candidates},
         {"selected_index", m.selected_index},
         {"literal", m.literal ? json(m.literal->text) : json(nullptr)},
         {"error", StageErrorJson(m.error)}});
  }
  json matches = json::array();
  for (const auto& tm : s.template_matches) {
    matches.push_back({{"rank", tm.rank},
                       {"distance", tm.distance},
                       {"template", tm.tmpl.serialization},
                       {"frequency", tm.tmpl.frequency},
                       {"placeholder_count", tm.tmpl.placeholder_count}});
  }
  json query = nullptr;
  if (s.query) {
    json warnings = json::array();
    for (const auto& d : s.query_warnings) {
      warnings.push_back(
          {{"severity", d.severity == Diagnostic::Severity::kError ? "error" : "warning"},
           {"message", d.message},
           {"line", d.line},
           {"column", d.column}});
    }
    query = {{"text", s.query->text},
             {"origin", QueryOriginName(s.query->origin)},
             {"warnings", warnings}};
  }
  json stages = json::object();
  json stage_errors = json::object();
  for (Stage stage : AllStages()) {
    auto it = s.stages.find(stage);
    StageState st = it == s.stages.end() ? StageState{} : it->second;
    stages[std::string(StageName(stage))] = {{"status", StageStatusName(st.status)},
                                             {"error", StageErrorJson(st.error)}};
    if (st.error) stage_errors[std::string(StageName(stage))] = StageErrorJson(st.error);
  }
  json logical_form = {{"text", s.logical_form_text},
                       {"parsed", s.logical_form.has_value()},
                       {"tokens", s.logical_form
                                      ? json(RenderTokens(*s.logical_form,
                                                          RenderStyle::kLogicalForm, vocab))
                                      : json(TokenizeLogicalForm(s.logical_form_text))},
                       {"diagnostic", s.parse_diagnostic ? json(*s.parse_diagnostic)
                                                         : json(nullptr)}};
  return {{"id", s.id},
          {"question", s.question},
          {"revision", s.revision},
          {"logical_form", logical_form},
          {"mentions", mentions},
          {"templates", {{"matches", matches}, {"selected_index", s.selected_template}}},
          {"query", query},
          {"answers", s.answers ? ToJson(*s.answers) : json(nullptr)},
          {"stages", stages},
          {"stage_errors", stage_errors}};
}

}  // namespace dblpqa
