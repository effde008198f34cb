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


// Reference evaluation of the query subset over a World: basic graph
// patterns, FILTER comparisons, FILTER NOT EXISTS, UNION, COUNT with
// GROUP BY, ORDER BY, DISTINCT and LIMIT.

#include <algorithm>
#include <map>
#include <optional>
#include <set>

#include "synth/world.h"

namespace dblpqa::synth {

namespace {

using Solution = std::map<std::string, Node>;

struct Context {
  const World& world;
  const Vocabulary& vocab;
};

std::optional<long long> AsNumber(const Node& n) {
  if (n.is_uri || !IsIntegerLiteral(n.value)) return std::nullopt;
  return std::stoll(n.value);
}

// A constant in the query against a stored node.
bool ConstantMatches(const Term& t, const Node& n) {
  switch (t.kind) {
    case Term::Kind::kUri:
      return n.is_uri && n.value == t.text;
    case Term::Kind::kLiteral:
      if (n.is_uri) return false;
      if (IsStringLiteral(t.text)) return n.datatype.empty() && n.value == StringLiteralContent(t.text);
      if (IsIntegerLiteral(t.text)) {
        auto v = AsNumber(n);
        return v && *v == std::stoll(t.text);
      }
      return n.value == t.text;
    default:
      return false;
  }
}

Node ConstantNode(const Term& t) {
  if (t.kind == Term::Kind::kUri) return {true, t.text, ""};
  if (IsStringLiteral(t.text)) return {false, StringLiteralContent(t.text), ""};
  return {false, t.text, ""};
}

std::string PredicateOf(const Triple& triple, const Context& ctx) {
  if (const std::string* uri = ctx.vocab.PredicateUri(triple.relation)) return *uri;
  std::string r = triple.relation;
  if (r.size() > 2 && r.front() == '<' && r.back() == '>') return r.substr(1, r.size() - 2);
  return r;
}

std::vector<Solution> EvalGroup(const GroupPattern& group, const std::vector<Solution>& input,
                                const Context& ctx);

std::vector<Solution> EvalTriple(const Triple& triple, const std::vector<Solution>& input,
                                 const Context& ctx) {
  std::string predicate = PredicateOf(triple, ctx);
  std::vector<Solution> out;
  for (const auto& sol : input) {
    // Bound variables act as constants.
    auto bound = [&](const Term& t) -> std::optional<Node> {
      if (t.kind != Term::Kind::kVariable) return std::nullopt;
      auto it = sol.find(t.text);
      if (it == sol.end()) return std::nullopt;
      return it->second;
    };
    std::optional<Node> s = bound(triple.subject), o = bound(triple.object);
    const Node* sp = s ? &*s : nullptr;
    const Node* op = o ? &*o : nullptr;
    std::optional<Node> s_const, o_const;
    if (!sp && triple.subject.kind == Term::Kind::kUri) {
      s_const = ConstantNode(triple.subject);
      sp = &*s_const;
    }
    if (!op && triple.object.kind == Term::Kind::kUri) {
      o_const = ConstantNode(triple.object);
      op = &*o_const;
    }
    for (const Fact* f : ctx.world.Match(sp, predicate, op)) {
      if (triple.subject.kind != Term::Kind::kVariable &&
          !ConstantMatches(triple.subject, f->subject)) {
        continue;
      }
      if (triple.object.kind != Term::Kind::kVariable &&
          !ConstantMatches(triple.object, f->object)) {
        continue;
      }
      Solution next = sol;
      bool ok = true;
      auto bind = [&](const Term& t, const Node& n) {
        if (t.kind != Term::Kind::kVariable) return;
        auto [it, inserted] = next.emplace(t.text, n);
        if (!inserted && !(it->second == n)) ok = false;
      };
      bind(triple.subject, f->subject);
      bind(triple.object, f->object);
      if (ok) out.push_back(std::move(next));
    }
  }
  return out;
}

std::optional<Node> ValueOf(const Term& t, const Solution& sol) {
  if (t.kind == Term::Kind::kVariable) {
    auto it = sol.find(t.text);
    if (it == sol.end()) return std::nullopt;
    return it->second;
  }
  return ConstantNode(t);
}

bool Compare(const Comparison& c, const Solution& sol) {
  auto a = ValueOf(c.lhs, sol), b = ValueOf(c.rhs, sol);
  if (!a || !b) return false;
  auto symbol = Vocabulary::OperatorSymbol(c.op);
  std::string op = symbol ? std::string(*symbol) : c.op;
  auto na = AsNumber(*a), nb = AsNumber(*b);
  int cmp;
  if (na && nb) {
    cmp = *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  } else {
    if (op != "=" && op != "!=" && (a->is_uri || b->is_uri)) return false;
    if (a->is_uri != b->is_uri) {
      cmp = 1;
    } else {
      cmp = a->value.compare(b->value);
      cmp = cmp < 0 ? -1 : (cmp > 0 ? 1 : 0);
    }
  }
  if (op == "=") return cmp == 0;
  if (op == "!=") return cmp != 0;
  if (op == "<") return cmp < 0;
  if (op == ">") return cmp > 0;
  if (op == "<=") return cmp <= 0;
  if (op == ">=") return cmp >= 0;
  return false;
}

bool Keep(const Filter& f, const Solution& sol, const Context& ctx) {
  if (const auto* c = std::get_if<Comparison>(&f.condition)) return Compare(*c, sol);
  const auto& ne = std::get<NotExists>(f.condition);
  return EvalGroup(ne.pattern.at(0), {sol}, ctx).empty();
}

std::vector<Solution> EvalGroup(const GroupPattern& group, const std::vector<Solution>& input,
                                const Context& ctx) {
  std::vector<Solution> current = input;
  std::vector<const Filter*> filters;
  for (const auto& element : group.elements) {
    if (const auto* t = std::get_if<Triple>(&element)) {
      current = EvalTriple(*t, current, ctx);
    } else if (const auto* f = std::get_if<Filter>(&element)) {
      filters.push_back(f);
    } else {
      const auto& u = std::get<Union>(element);
      std::vector<Solution> merged;
      for (const auto& branch : u.branches) {
        auto part = EvalGroup(branch, current, ctx);
        merged.insert(merged.end(), part.begin(), part.end());
      }
      current = std::move(merged);
    }
  }
  std::vector<Solution> out;
  for (auto& sol : current) {
    bool keep = true;
    for (const Filter* f : filters) keep = keep && Keep(*f, sol, ctx);
    if (keep) out.push_back(std::move(sol));
  }
  return out;
}

int CompareNodes(const std::optional<Node>& a, const std::optional<Node>& b) {
  if (!a || !b) return a ? 1 : (b ? -1 : 0);
  auto na = AsNumber(*a), nb = AsNumber(*b);
  if (na && nb) return *na < *nb ? -1 : (*na > *nb ? 1 : 0);
  int c = a->value.compare(b->value);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

AnswerValue ToAnswer(const Node& n) {
  return n.is_uri ? AnswerValue::Uri(n.value) : AnswerValue::Literal(n.value, n.datatype);
}

using Row = std::vector<std::optional<Node>>;

}  // namespace

AnswerTable Evaluate(const World& world, const LogicalForm& form, const Vocabulary& vocab) {
  Context ctx{world, vocab};
  std::vector<Solution> solutions = EvalGroup(form.where, {Solution{}}, ctx);
  AnswerTable table;
  if (form.kind == LogicalForm::Kind::kAsk) {
    table.is_boolean = true;
    table.columns = {"answer"};
    table.rows = {{AnswerValue::Boolean(!solutions.empty())}};
    return table;
  }
  for (const auto& p : form.projection) table.columns.push_back(p.variable.substr(1));

  bool aggregate = !form.group_by.empty();
  for (const auto& p : form.projection) aggregate = aggregate || p.is_count;

  std::vector<Row> rows;
  if (aggregate) {
    std::map<std::vector<std::optional<Node>>, std::vector<const Solution*>> groups;
    for (const auto& sol : solutions) {
      std::vector<std::optional<Node>> key;
      for (const auto& g : form.group_by) key.push_back(ValueOf(Term::Variable(g), sol));
      groups[key].push_back(&sol);
    }
    if (groups.empty() && form.group_by.empty()) groups[{}] = {};
    auto count = [](const std::vector<const Solution*>& members, const std::string& var,
                    bool distinct) {
      std::set<Node> seen;
      long long n = 0;
      for (const Solution* s : members) {
        auto it = s->find(var);
        if (it == s->end()) continue;
        if (!distinct || seen.insert(it->second).second) ++n;
      }
      return Node{false, std::to_string(n), kIntType};
    };
    std::vector<std::pair<Row, const std::vector<const Solution*>*>> grouped;
    for (const auto& [key, members] : groups) {
      Row row;
      for (const auto& p : form.projection) {
        if (p.is_count) {
          row.push_back(count(members, p.count_of, p.count_distinct));
        } else if (!members.empty()) {
          row.push_back(ValueOf(Term::Variable(p.variable), *members.front()));
        } else {
          row.push_back(std::nullopt);
        }
      }
      grouped.push_back({std::move(row), &members});
    }
    auto key_value = [&](const OrderKey& k, const Row& row,
                         const std::vector<const Solution*>& members) -> std::optional<Node> {
      if (k.is_count) return count(members, k.variable, k.count_distinct);
      for (size_t i = 0; i < form.projection.size(); ++i) {
        if (form.projection[i].variable == k.variable) return row[i];
      }
      if (!members.empty()) return ValueOf(Term::Variable(k.variable), *members.front());
      return std::nullopt;
    };
    std::stable_sort(grouped.begin(), grouped.end(), [&](const auto& a, const auto& b) {
      for (const auto& k : form.order_by) {
        int c = CompareNodes(key_value(k, a.first, *a.second), key_value(k, b.first, *b.second));
        if (c != 0) return k.direction == OrderKey::Direction::kDesc ? c > 0 : c < 0;
      }
      return false;
    });
    for (auto& g : grouped) rows.push_back(std::move(g.first));
  } else {
    std::stable_sort(solutions.begin(), solutions.end(), [&](const auto& a, const auto& b) {
      for (const auto& k : form.order_by) {
        int c = CompareNodes(ValueOf(Term::Variable(k.variable), a),
                             ValueOf(Term::Variable(k.variable), b));
        if (c != 0) return k.direction == OrderKey::Direction::kDesc ? c > 0 : c < 0;
      }
      return false;
    });
    for (const auto& sol : solutions) {
      Row row;
      for (const auto& p : form.projection) row.push_back(ValueOf(Term::Variable(p.variable), sol));
      rows.push_back(std::move(row));
    }
  }
  if (form.distinct) {
    std::set<Row> seen;
    std::vector<Row> unique;
    for (auto& r : rows) {
      if (seen.insert(r).second) unique.push_back(std::move(r));
    }
    rows = std::move(unique);
  }
  if (form.limit && rows.size() > static_cast<size_t>(*form.limit)) rows.resize(*form.limit);
  for (const auto& r : rows) {
    std::vector<AnswerValue> out;
    for (const auto& v : r) out.push_back(v ? ToAnswer(*v) : AnswerValue{});
    table.rows.push_back(std::move(out));
  }
  return table;
}

AnswerTable EvaluateSparql(const World& world, const std::string& sparql,
                           const Vocabulary& vocab) {
  return Evaluate(world, ParseSparql(sparql, vocab, {.allow_raw_predicates = true}), vocab);
}

}  // namespace dblpqa::synth
