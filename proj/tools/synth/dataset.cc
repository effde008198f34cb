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


#include "synth/dataset.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <sstream>

namespace dblpqa::synth {

namespace {

using json = nlohmann::json;

struct Family {
  const char* name;
  int weight;
  // Tokens separated by single spaces. $X are slots, <rel> are relation
  // tokens, ?x ?y ?z ?w are renamed per query.
  const char* sparql;
  std::vector<const char*> questions;
  bool in_subset = true;
};

const std::vector<Family>& Families() {
  static const std::vector<Family> k = {
      {"authors-and-venues", 40,
       "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { $P <authoredBy> ?firstanswer . "
       "?x <authoredBy> ?firstanswer . ?x <publishedIn> ?secondanswer FILTER ( ?x != $P ) }",
       {"Who are the authors of '{P}' and where else did they publish?",
        "enumerate the authors of '{P}' along with the venues of their other papers"}},
      {"authors-and-other-papers", 40,
       "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { $P <authoredBy> ?firstanswer . "
       "?secondanswer <authoredBy> ?firstanswer FILTER ( ?secondanswer != $P ) }",
       {"enumerate the authors of '{P}' along with other papers they published",
        "Which authors wrote '{P}' and what other papers did they write?"}},
      {"authors-and-years", 25,
       "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { $P <authoredBy> ?firstanswer . "
       "?x <authoredBy> ?firstanswer . ?x <yearOfPublication> ?secondanswer FILTER ( ?x != $P ) }",
       {"Who wrote '{P}' and in which years did they publish other papers?"}},
      {"authors-and-titles", 20,
       "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { $P <authoredBy> ?firstanswer . "
       "?x <authoredBy> ?firstanswer . ?x <title> ?secondanswer FILTER ( ?x != $P ) }",
       {"List the authors of '{P}' and the titles of their other papers."}},
      {"authors-and-coauthors", 20,
       "SELECT DISTINCT ?firstanswer ?secondanswer WHERE { $P <authoredBy> ?firstanswer . "
       "?x <authoredBy> ?firstanswer . ?x <authoredBy> ?secondanswer "
       "FILTER ( ?secondanswer != ?firstanswer ) }",
       {"Who are the authors of '{P}' and who else have they written with?"}},
      {"authors-of", 70, "SELECT DISTINCT ?answer WHERE { $P <authoredBy> ?answer }",
       {"Who are the authors of '{P}'?", "who wrote '{P}'?"}},
      {"venue-of", 50, "SELECT DISTINCT ?answer WHERE { $P <publishedIn> ?answer }",
       {"Where was '{P}' published?", "In which venue did '{P}' appear?"}},
      {"year-of", 50, "SELECT DISTINCT ?answer WHERE { $P <yearOfPublication> ?answer }",
       {"When was '{P}' published?", "In what year was '{P}' published?"}},
      {"creator-count", 25, "SELECT DISTINCT ?answer WHERE { $P <numberOfCreators> ?answer }",
       {"How many creators does '{P}' have?"}},
      {"primary-creator", 20,
       "SELECT DISTINCT ?answer WHERE { $A <primaryFullCreatorName> ?answer }",
       {"What is the full name of the creator {A}?"}},
      {"papers-by", 60, "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A }",
       {"What papers has {A} published?", "List the publications of {A}."}},
      {"papers-by-in-year", 45,
       "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A . ?answer <yearOfPublication> $Y }",
       {"What papers did {A} publish in {Y}?"}},
      {"papers-by-since", 45,
       "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A . ?answer <yearOfPublication> ?y "
       "FILTER ( ?y >= $Y ) }",
       {"what papers has {A} published in the last {n} years?"}},
      {"papers-by-before", 25,
       "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A . ?answer <yearOfPublication> ?y "
       "FILTER ( ?y < $Y ) }",
       {"Which papers did {A} publish before {Y}?"}},
      {"count-papers", 40,
       "SELECT ( COUNT ( DISTINCT ?x ) AS ?count ) WHERE { ?x <authoredBy> $A }",
       {"How many papers has {A} published?"}},
      {"coauthors", 45,
       "SELECT DISTINCT ?answer WHERE { ?x <authoredBy> $A . ?x <authoredBy> ?answer "
       "FILTER ( ?answer != $A ) }",
       {"Who are the co-authors of {A}?", "With whom has {A} co-authored papers?"}},
      {"count-coauthors", 20,
       "SELECT ( COUNT ( DISTINCT ?answer ) AS ?count ) WHERE { ?x <authoredBy> $A . "
       "?x <authoredBy> ?answer FILTER ( ?answer != $A ) }",
       {"How many co-authors does {A} have?"}},
      {"affiliation", 40, "SELECT DISTINCT ?answer WHERE { $A <primaryAffiliation> ?answer }",
       {"What is the primary affiliation of {A}?", "Where does {A} work?"}},
      {"people-at", 25, "SELECT DISTINCT ?answer WHERE { ?answer <primaryAffiliation> $S }",
       {"Which authors are affiliated with {S}?"}},
      {"papers-by-at-venue", 35,
       "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A . ?answer <publishedIn> $V }",
       {"Which papers did {A} publish in {V}?"}},
      {"venues-of-person", 35,
       "SELECT DISTINCT ?answer WHERE { ?x <authoredBy> $A . ?x <publishedIn> ?answer }",
       {"In which venues has {A} published?"}},
      {"papers-at-venue-in-year", 30,
       "SELECT DISTINCT ?answer WHERE { ?answer <publishedIn> $V . ?answer <yearOfPublication> $Y }",
       {"Which papers appeared in {V} in {Y}?"}},
      {"count-at-venue-in-year", 25,
       "SELECT ( COUNT ( DISTINCT ?answer ) AS ?count ) WHERE { ?answer <publishedIn> $V . "
       "?answer <yearOfPublication> $Y }",
       {"How many papers were published in {V} in {Y}?"}},
      {"ask-year", 30, "ASK { $P <yearOfPublication> $Y }",
       {"Was '{P}' published in {Y}?"}},
      {"ask-author", 30, "ASK { $P <authoredBy> $A }", {"Did {A} write '{P}'?"}},
      {"ask-venue", 20, "ASK { $P <publishedIn> $V }", {"Was '{P}' published in {V}?"}},
      {"joint-papers", 30,
       "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A . ?answer <authoredBy> $B }",
       {"Which papers did {A} and {B} write together?"}},
      {"papers-by-either", 20,
       "SELECT DISTINCT ?answer WHERE { { ?answer <authoredBy> $A } UNION { ?answer <authoredBy> $B } }",
       {"List papers written by {A} or {B}."}},
      {"solo-papers", 20,
       "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A FILTER NOT EXISTS { "
       "?answer <authoredBy> ?w FILTER ( ?w != $A ) } }",
       {"Which papers did {A} write alone?"}},
      {"top-venue", 20,
       "SELECT ?answer WHERE { ?x <authoredBy> $A . ?x <publishedIn> ?answer } GROUP BY ?answer "
       "ORDER BY DESC ( COUNT ( ?x ) ) LIMIT 1",
       {"In which venue has {A} published most often?"}},
      {"first-paper", 20,
       "SELECT ?answer WHERE { ?answer <authoredBy> $A . ?answer <yearOfPublication> ?y } "
       "ORDER BY ASC ( ?y ) LIMIT 1",
       {"What is the earliest paper of {A}?"}},
      {"papers-by-size", 15,
       "SELECT DISTINCT ?answer WHERE { ?answer <authoredBy> $A . ?answer <numberOfCreators> $C }",
       {"Which papers by {A} have {C} authors?"}},
      // Outside the subset grammar.
      {"year-of-optional", 8,
       "SELECT DISTINCT ?answer WHERE { $P <title> ?z OPTIONAL { $P <yearOfPublication> ?answer } }",
       {"When was '{P}' published, if known?"}, false},
      {"bibtex-type", 8,
       "SELECT DISTINCT ?answer WHERE { $P <https://dblp.org/rdf/schema#bibtexType> ?answer }",
       {"What kind of publication is '{P}'?"}, false},
  };
  return k;
}

const std::vector<std::vector<std::string>>& VariablePools() {
  static const std::vector<std::vector<std::string>> k = {
      {"?x", "?y", "?z", "?w"},
      {"?paper", "?year", "?title", "?other"},
      {"?p", "?yr", "?t", "?o"},
      {"?publication", "?pubYear", "?label", "?coauthor"},
      {"?s", "?v", "?u", "?q"},
  };
  return k;
}

class Sampler {
 public:
  Sampler(const World& world, unsigned seed) : world_(world), gen_(seed) {
    const auto& pubs = world.publications();
    for (size_t i = 0; i < pubs.size(); ++i) {
      for (size_t a : pubs[i].authors) by_person_[a].push_back(i);
    }
    for (const auto& [person, list] : by_person_) active_.push_back(person);
    for (size_t i = 0; i < world.persons().size(); ++i) {
      if (!world.persons()[i].affiliation.empty()) affiliated_.push_back(i);
    }
  }

  size_t Pick(size_t n) { return n == 0 ? 0 : gen_() % n; }
  bool Chance(unsigned percent) { return gen_() % 100 < percent; }

  template <typename T>
  const T& Choose(const std::vector<T>& v) { return v[Pick(v.size())]; }

  size_t PickFamily() {
    int total = 0;
    for (const auto& f : Families()) total += f.weight;
    int r = static_cast<int>(Pick(static_cast<size_t>(total)));
    for (size_t i = 0; i < Families().size(); ++i) {
      r -= Families()[i].weight;
      if (r < 0) return i;
    }
    return 0;
  }

  size_t Publication() { return Pick(world_.publications().size()); }
  size_t ActivePerson() { return Choose(active_); }
  size_t AffiliatedPerson() { return Choose(affiliated_); }
  const std::vector<size_t>& PapersOf(size_t person) { return by_person_[person]; }

  // A co-author of the person when there is one.
  size_t Partner(size_t person) {
    std::vector<size_t> partners;
    for (size_t pub : PapersOf(person)) {
      for (size_t a : world_.publications()[pub].authors) {
        if (a != person) partners.push_back(a);
      }
    }
    if (partners.empty()) return ActivePerson();
    return Choose(partners);
  }

 private:
  const World& world_;
  std::mt19937 gen_;
  std::map<size_t, std::vector<size_t>> by_person_;
  std::vector<size_t> active_;
  std::vector<size_t> affiliated_;
};

std::string Replace(std::string text, const std::string& from, const std::string& to) {
  for (size_t pos = text.find(from); pos != std::string::npos;
       pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
  return text;
}

bool IsKeywordToken(const std::string& t) {
  static const char* kWords[] = {"SELECT", "DISTINCT", "WHERE", "FILTER", "ASK", "COUNT",
                                 "AS", "GROUP", "BY", "ORDER", "DESC", "ASC", "LIMIT",
                                 "UNION", "NOT", "EXISTS", "OPTIONAL"};
  return std::find(std::begin(kWords), std::end(kWords), t) != std::end(kWords);
}

std::string Lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

struct Surface {
  bool lower_keywords = false;
  bool compact_parens = false;
  bool newlines = false;
  bool trailing_dot = false;
  size_t pool = 0;
};

// Renders a family template with slot values in one of several surface
// styles. Slot values are already SPARQL terms.
std::string Render(const Family& family, const std::map<std::string, std::string>& slots,
                   const Vocabulary& vocab, const Surface& style) {
  std::istringstream in(family.sparql);
  std::vector<std::string> tokens;
  for (std::string t; in >> t;) tokens.push_back(t);

  static const char* kTemplateVars[] = {"?x", "?y", "?z", "?w"};
  const auto& pool = VariablePools()[style.pool];
  std::vector<std::string> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::string t = tokens[i];
    if (t[0] == '$') {
      t = slots.at(t);
    } else if (const std::string* uri = vocab.PredicateUri(t)) {
      t = "<" + *uri + ">";
    } else if (t[0] == '?') {
      for (size_t v = 0; v < 4; ++v) {
        if (t == kTemplateVars[v]) t = pool[v];
      }
    } else if (IsKeywordToken(t) && style.lower_keywords) {
      t = Lower(t);
    }
    // A trailing dot after the last triple of a group.
    if (t == "}" && style.trailing_dot && !out.empty() && out.back() != "}" &&
        out.back() != ")" && out.back() != "{" && out.back() != ".") {
      out.push_back(".");
    }
    out.push_back(t);
  }

  std::string text;
  for (size_t i = 0; i < out.size(); ++i) {
    const std::string& t = out[i];
    if (i > 0) {
      const std::string& prev = out[i - 1];
      bool tight = style.compact_parens &&
                   (prev == "(" || t == ")" ||
                    (t == "(" && (Lower(prev) == "filter" || Lower(prev) == "count" ||
                                  Lower(prev) == "desc" || Lower(prev) == "asc")));
      if (style.newlines && (prev == "{" || prev == ".")) {
        text += "\n  ";
      } else if (style.newlines && t == "}") {
        text += "\n";
      } else if (!tight) {
        text += " ";
      }
    }
    text += t;
  }
  return text;
}

std::string Uri(const std::string& u) { return "<" + u + ">"; }

}  // namespace

std::vector<DatasetEntry> GenerateDataset(const World& world, const Vocabulary& vocab,
                                          const DatasetOptions& options) {
  Sampler sampler(world, options.seed);
  const auto& pubs = world.publications();
  const auto& persons = world.persons();
  std::vector<DatasetEntry> entries;
  size_t width = std::to_string(options.count).size();
  while (entries.size() < options.count) {
    const Family& family = Families()[sampler.PickFamily()];
    if (options.subset_only && !family.in_subset) continue;
    std::string sparql = family.sparql;
    std::map<std::string, std::string> slots, words;

    size_t a = sampler.ActivePerson();
    size_t p = sampler.Publication();
    if (sparql.find("$P") != std::string::npos && sparql.find("$A") != std::string::npos) {
      // Questions about a person and a paper: half of them hold.
      const auto& own = sampler.PapersOf(a);
      if (sampler.Chance(50)) p = own[sampler.Pick(own.size())];
    }
    const auto& mine = sampler.PapersOf(a);
    size_t anchor = sparql.find("$P") != std::string::npos ? p : mine[sampler.Pick(mine.size())];
    if (sparql.find("$A") == std::string::npos && sparql.find("$P") == std::string::npos) {
      anchor = sampler.Publication();
    }
    size_t b = sampler.Partner(a);
    int year = pubs[anchor].year;
    if (family.name == std::string("papers-by-since")) {
      int n = 1 + static_cast<int>(sampler.Pick(12));
      year = kReferenceYear - n;
      words["{n}"] = std::to_string(n);
    } else if (sampler.Chance(20)) {
      year += static_cast<int>(sampler.Pick(5)) - 2;
    }
    size_t s = sampler.AffiliatedPerson();

    slots["$P"] = Uri(pubs[p].uri);
    slots["$A"] = Uri(persons[a].uri);
    slots["$B"] = Uri(persons[b].uri);
    slots["$Y"] = std::to_string(year);
    slots["$V"] = QuoteStringLiteral(pubs[anchor].venue);
    slots["$S"] = QuoteStringLiteral(persons[s].affiliation);
    slots["$C"] = std::to_string(pubs[anchor].authors.size());
    words["{P}"] = pubs[p].title;
    words["{A}"] = persons[a].name;
    words["{B}"] = persons[b].name;
    words["{Y}"] = std::to_string(year);
    words["{V}"] = pubs[anchor].venue;
    words["{S}"] = persons[s].affiliation;
    words["{C}"] = std::to_string(pubs[anchor].authors.size());

    Surface style;
    style.lower_keywords = sampler.Chance(15);
    style.compact_parens = sampler.Chance(40);
    style.newlines = sampler.Chance(30);
    style.trailing_dot = sampler.Chance(20);
    style.pool = sampler.Pick(VariablePools().size());

    DatasetEntry e;
    e.family = family.name;
    std::string number = std::to_string(entries.size() + 1);
    e.id = options.id_prefix + std::string(width - number.size(), '0') + number;
    e.question = sampler.Choose(family.questions);
    for (const auto& [k, v] : words) e.question = Replace(e.question, k, v);
    e.sparql = Render(family, slots, vocab, style);
    if (options.with_answers && family.in_subset) {
      e.answer = EvaluateSparql(world, e.sparql, vocab);
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

nlohmann::json DatasetToJson(const std::vector<DatasetEntry>& entries) {
  json items = json::array();
  for (const auto& e : entries) {
    json item = {{"id", e.id},
                 {"question", {{"string", e.question}}},
                 {"query", {{"sparql", e.sparql}}}};
    if (e.answer) item["answer"] = json::parse(SerializeResults(*e.answer));
    items.push_back(std::move(item));
  }
  return {{"questions", std::move(items)}};
}

}  // namespace dblpqa::synth
