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


#include "dblpqa/template_base.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dblpqa/error.h"

namespace dblpqa {

namespace {

using json = nlohmann::json;

std::string CanonicalKey(const TemplateForm& form, const Vocabulary& vocab) {
  return Serialize(CanonicalizeVariables(form), vocab);
}

}  // namespace

TemplatizedQuery Templatize(std::string_view sparql, const Vocabulary& vocab) {
  LogicalForm form = ParseSparql(sparql, vocab);
  auto [masked, mentions] = MaskEntities(form);
  TemplatizedQuery out;
  out.form = std::move(masked);
  for (auto& m : mentions) out.bindings.push_back(std::move(m.term));
  return out;
}

int CountPlaceholders(const LogicalForm& form) {
  std::set<int> seen;
  for (const Term* t : CollectTerms(form)) {
    if (t->kind == Term::Kind::kPlaceholder) seen.insert(PlaceholderIndex(t->text));
  }
  return static_cast<int>(seen.size());
}

size_t TokenLevenshtein(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double TokenEditDistance(const std::vector<std::string>& a,
                         const std::vector<std::string>& b) {
  size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(TokenLevenshtein(a, b)) / static_cast<double>(longest);
}

TemplateBase::TemplateBase(std::vector<Template> templates, Vocabulary vocab,
                           std::string built_from, size_t item_count)
    : templates_(std::move(templates)),
      vocab_(std::move(vocab)),
      built_from_(std::move(built_from)),
      item_count_(item_count) {
  match_tokens_.reserve(templates_.size());
  for (const auto& t : templates_) match_tokens_.push_back(MatchTokens(t.form));
}

std::vector<std::string> TemplateBase::MatchTokens(const TemplateForm& form) const {
  return CanonicalizeVariableTokens(RenderTokens(form, RenderStyle::kLogicalForm, vocab_));
}

TemplateBase TemplateBase::Build(const std::vector<GoldItem>& items,
                                 const Vocabulary& vocab, BuildReport* report,
                                 std::string built_from) {
  BuildReport local;
  BuildReport& r = report ? *report : local;
  r = BuildReport{};
  r.items = items.size();
  std::vector<Template> templates;
  std::map<std::string, size_t> index;
  for (const auto& item : items) {
    TemplatizedQuery tq;
    try {
      tq = Templatize(item.sparql, vocab);
    } catch (const Error& e) {
      r.skipped.push_back({item.id, e.code(), e.what()});
      continue;
    }
    ++r.parsed;
    auto [it, inserted] = index.emplace(CanonicalKey(tq.form, vocab), templates.size());
    if (inserted) {
      Template t;
      t.serialization = Serialize(tq.form, vocab);
      t.placeholder_count = CountPlaceholders(tq.form);
      t.form = std::move(tq.form);
      templates.push_back(std::move(t));
    }
    Template& t = templates[it->second];
    ++t.frequency;
    t.source_ids.push_back(item.id);
  }
  r.templates = templates.size();
  return TemplateBase(std::move(templates), vocab, std::move(built_from), items.size());
}

std::vector<TemplateMatch> TemplateBase::Retrieve(const TemplateForm& masked,
                                                  int k) const {
  return RetrieveTokens(RenderTokens(masked, RenderStyle::kLogicalForm, vocab_), k);
}

std::vector<TemplateMatch> TemplateBase::RetrieveTokens(
    const std::vector<std::string>& masked_tokens, int k) const {
  if (templates_.empty()) {
    throw Error(ErrorCode::kEmptyTemplateBase, "template base is empty");
  }
  if (k <= 0) throw Error(ErrorCode::kConfigError, "k must be positive");
  std::vector<std::string> query = CanonicalizeVariableTokens(masked_tokens);
  std::vector<std::pair<double, size_t>> scored;
  scored.reserve(templates_.size());
  for (size_t i = 0; i < templates_.size(); ++i) {
    scored.emplace_back(TokenEditDistance(query, match_tokens_[i]), i);
  }
  auto before = [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    const Template& a = templates_[x.second];
    const Template& b = templates_[y.second];
    if (a.frequency != b.frequency) return a.frequency > b.frequency;
    return a.serialization < b.serialization;
  };
  size_t n = std::min(static_cast<size_t>(k), scored.size());
  std::partial_sort(scored.begin(), scored.begin() + n, scored.end(), before);
  std::vector<TemplateMatch> out;
  for (size_t i = 0; i < n; ++i) {
    out.push_back({templates_[scored[i].second], scored[i].first, static_cast<int>(i) + 1});
  }
  return out;
}

std::string TemplateBase::SaveToString() const {
  std::string out = json{{"format", "dblpqa-templates"},
                         {"version", 1},
                         {"built_from", built_from_},
                         {"items", item_count_},
                         {"templates", templates_.size()}}
                        .dump();
  out += '\n';
  for (const auto& t : templates_) {
    out += json{{"template", t.serialization},
                {"placeholders", t.placeholder_count},
                {"frequency", t.frequency},
                {"source_ids", t.source_ids}}
               .dump();
    out += '\n';
  }
  return out;
}

void TemplateBase::Save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kFileUnreadable, "cannot write " + path);
  out << SaveToString();
}

TemplateBase TemplateBase::LoadFromString(std::string_view text, const Vocabulary& vocab) {
  std::istringstream in{std::string(text)};
  std::string line;
  size_t line_no = 0;
  auto fail = [&](const std::string& what) -> Error {
    return Error(ErrorCode::kSchemaMismatch,
                 "template file line " + std::to_string(line_no) + ": " + what);
  };
  json header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    header = json::parse(line, nullptr, false);
    break;
  }
  if (!header.is_object() || header.value("format", "") != "dblpqa-templates") {
    throw fail("missing dblpqa-templates header");
  }
  std::vector<Template> templates;
  std::set<std::string> keys;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (!rec.is_object() || !rec.contains("template") || !rec["template"].is_string()) {
      throw fail("record without a template string");
    }
    Template t;
    try {
      t.form = ParseLogicalForm(rec["template"].get<std::string>(), vocab);
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
    t.serialization = Serialize(t.form, vocab);
    t.placeholder_count = CountPlaceholders(t.form);
    t.frequency = rec.value("frequency", 1);
    if (t.frequency < 1) throw fail("frequency must be at least 1");
    if (rec.contains("source_ids")) {
      t.source_ids = rec["source_ids"].get<std::vector<std::string>>();
    }
    if (!keys.insert(CanonicalKey(t.form, vocab)).second) throw fail("duplicate template");
    templates.push_back(std::move(t));
  }
  return TemplateBase(std::move(templates), vocab, header.value("built_from", ""),
                      header.value("items", static_cast<size_t>(0)));
}

TemplateBase TemplateBase::Load(const std::string& path, const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot read template base " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return LoadFromString(buf.str(), vocab);
}

}  // namespace dblpqa
