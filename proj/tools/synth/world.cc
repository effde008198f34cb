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


#include "synth/world.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include <json.hpp>

namespace dblpqa::synth {

namespace {

using json = nlohmann::json;

std::string Pred(const char* local) { return std::string(kSchema) + local; }

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}
  size_t Pick(size_t n) { return n == 0 ? 0 : gen_() % n; }
  bool Chance(unsigned percent) { return gen_() % 100 < percent; }

 private:
  std::mt19937 gen_;
};

const std::vector<std::string>& FirstNames() {
  static const std::vector<std::string> k = {
      "Anna", "Bruno", "Chen", "Dana", "Elif", "Farid", "Greta", "Hiro", "Ines", "Jonas",
      "Kaito", "Lena", "Marco", "Nadia", "Oskar", "Priya", "Quentin", "Rosa", "Sven",
      "Tara", "Umar", "Vera", "Wei", "Xenia", "Yusuf", "Zoe"};
  return k;
}

const std::vector<std::string>& LastNames() {
  static const std::vector<std::string> k = {
      "Albrecht", "Baptiste", "Castellano", "Dimitrov", "Eriksen", "Fontaine", "Gruber",
      "Hakimi", "Ivanova", "Jansen", "Kowalski", "Lindqvist", "Moreau", "Nakamura",
      "Okafor", "Petrov", "Quiroga", "Rahman", "Schreiber", "Takahashi", "Urquhart",
      "Valente", "Wojcik", "Yamamoto", "Zeller"};
  return k;
}

const std::vector<std::string>& VenueNames() {
  static const std::vector<std::string> k = {
      "ACL", "EMNLP", "NAACL-HLT", "COLING", "ISWC", "ESWC", "WWW", "SIGIR", "CIKM",
      "KDD", "ICDE", "VLDB", "AAAI", "IJCAI", "NeurIPS", "ICML", "Semantic Web",
      "J. Web Semant.", "Commun. ACM", "ICESS"};
  return k;
}

const std::vector<std::string>& TitleHeads() {
  static const std::vector<std::string> k = {
      "Learning", "Mining", "Querying", "Indexing", "Ranking", "Linking", "Embedding",
      "Summarizing", "Parsing", "Scaling", "Verifying", "Explaining"};
  return k;
}

const std::vector<std::string>& TitleObjects() {
  static const std::vector<std::string> k = {
      "Knowledge Graphs", "Scholarly Data", "Question Answering Systems",
      "Entity Descriptions", "Bibliographic Records", "Semantic Parsers",
      "Citation Networks", "Sparse Tensors", "Event Streams", "Relational Tables",
      "Linked Open Data", "Neural Retrievers", "Ontology Alignments", "Query Logs"};
  return k;
}

const std::vector<std::string>& TitleTails() {
  static const std::vector<std::string> k = {
      "at Scale", "with Weak Supervision", "under Uncertainty", "for the Web",
      "in Practice", "with Templates", "from Examples", "over Time", "Revisited",
      "without Labels"};
  return k;
}

std::string Slug(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::vector<std::string> Words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

Vocabulary WorldVocabulary() {
  std::string manifest;
  for (const char* r : {"authoredBy", "editedBy", "publishedIn", "yearOfPublication",
                        "primaryAffiliation", "title", "numberOfCreators",
                        "primaryFullCreatorName"}) {
    manifest += "<" + std::string(r) + "> = " + Pred(r) + "\n";
  }
  return Vocabulary::FromManifestText(manifest);
}

void World::AddPerson(std::string uri, std::string name, std::string affiliation) {
  persons_.push_back({std::move(uri), std::move(name), std::move(affiliation)});
}

void World::AddPublication(Publication p) { publications_.push_back(std::move(p)); }

const Person* World::FindPerson(const std::string& name) const {
  for (const auto& p : persons_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const Publication* World::FindPublication(const std::string& uri) const {
  for (const auto& p : publications_) {
    if (p.uri == uri) return &p;
  }
  return nullptr;
}

std::vector<std::string> World::Venues() const {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& p : publications_) {
    if (seen.insert(p.venue).second) out.push_back(p.venue);
  }
  return out;
}

World World::Generate(unsigned seed) {
  World w;
  Rng rng(seed);
  auto person = [&](const std::string& name) {
    for (size_t i = 0; i < w.persons_.size(); ++i) {
      if (w.persons_[i].name == name) return i;
    }
    return w.persons_.size();
  };

  // Named people. Only the second BERT author's identifier is a real one;
  // the remaining identifiers are invented.
  w.AddPerson("https://dblp.org/pid/130/3481", "Jacob Devlin", "Google Research");
  w.AddPerson(kChangPid, "Ming-Wei Chang", "Google Research");
  w.AddPerson("https://dblp.org/pid/121/7560", "Kenton Lee", "Google Research");
  w.AddPerson("https://dblp.org/pid/25/1520", "Kristina Toutanova", "Google Research");
  w.AddPerson("https://dblp.org/pid/b/TimBernersLee", "Tim Berners-Lee",
              "Massachusetts Institute of Technology");
  const char* attention[] = {"Ashish Vaswani", "Noam Shazeer", "Niki Parmar",
                             "Jakob Uszkoreit", "Llion Jones", "Aidan N. Gomez",
                             "Lukasz Kaiser", "Illia Polosukhin"};
  for (size_t i = 0; i < 8; ++i) {
    w.AddPerson("https://dblp.org/pid/" + std::to_string(180 + i) + "/" +
                    std::to_string(4100 + 37 * i),
                attention[i], i % 2 == 0 ? "Google Brain" : "");
  }
  size_t named = w.persons_.size();
  std::set<std::string> names;
  for (const auto& p : w.persons_) names.insert(p.name);
  while (w.persons_.size() < named + 140) {
    std::string name = FirstNames()[rng.Pick(FirstNames().size())] + " " +
                       LastNames()[rng.Pick(LastNames().size())];
    if (!names.insert(name).second) continue;
    size_t n = w.persons_.size();
    std::string aff;
    if (rng.Chance(60)) {
      static const char* kAff[] = {"University of Zurich", "TU Munich", "Kyoto University",
                                   "University of Oslo", "ETH Zurich", "KAIST",
                                   "University of Edinburgh", "Sorbonne University",
                                   "University of Toronto", "IIT Delhi"};
      aff = kAff[rng.Pick(10)];
    }
    w.AddPerson("https://dblp.org/pid/" + std::to_string(200 + n) + "/" +
                    std::to_string(1000 + (n * 7919) % 9000),
                name, aff);
  }

  auto ids = [&](std::initializer_list<const char*> list) {
    std::vector<size_t> out;
    for (const char* n : list) out.push_back(person(n));
    return out;
  };
  auto bert_authors = ids({"Jacob Devlin", "Ming-Wei Chang", "Kenton Lee", "Kristina Toutanova"});
  w.AddPublication({kBertFormal, kBertTitle, "NAACL-HLT (1)", 2019, bert_authors, false});
  w.AddPublication({kBertPreprint, kBertTitle, "CoRR", 2018, bert_authors, true});
  w.AddPublication({"https://dblp.org/rec/conf/icess/ChangR09",
                    "Adaptive Power Management for Embedded Sensor Nodes", "ICESS", 2009,
                    ids({"Ming-Wei Chang"}), false});
  w.AddPublication({"https://dblp.org/rec/conf/acl/ChangT13",
                    "Structured Output Learning for Entity Linking", "ACL", 2013,
                    ids({"Ming-Wei Chang", "Kristina Toutanova"}), false});
  w.AddPublication({"https://dblp.org/rec/conf/emnlp/LeeCT17",
                    "End-to-end Neural Coreference Resolution", "EMNLP", 2017,
                    ids({"Kenton Lee"}), false});
  w.AddPublication({"https://dblp.org/rec/conf/acl/DevlinZHLSM14",
                    "Fast and Robust Neural Network Joint Models for Statistical Machine "
                    "Translation",
                    "ACL", 2014, ids({"Jacob Devlin"}), false});
  w.AddPublication({"https://dblp.org/rec/conf/acl/ToutanovaM00",
                    "Enriching the Knowledge Sources Used in a Maximum Entropy Tagger",
                    "EMNLP", 2000, ids({"Kristina Toutanova"}), false});
  std::vector<size_t> attention_authors;
  for (const char* n : attention) attention_authors.push_back(person(n));
  w.AddPublication({"https://dblp.org/rec/conf/nips/VaswaniSPUJGKP17",
                    "Attention is All you Need", "NIPS", 2017, attention_authors, false});
  w.AddPublication({"https://dblp.org/rec/journals/corr/VaswaniSPUJGKP17",
                    "Attention Is All You Need", "CoRR", 2017, attention_authors, true});
  w.AddPublication({"https://dblp.org/rec/conf/icml/ShazeerS18",
                    "Adafactor: Adaptive Learning Rates with Sublinear Memory Cost", "ICML",
                    2018, ids({"Noam Shazeer"}), false});
  w.AddPublication({"https://dblp.org/rec/conf/nips/KaiserB16",
                    "Can Active Memory Replace Attention", "NIPS", 2016,
                    ids({"Lukasz Kaiser"}), false});
  const int tbl_years[] = {2009, 2016, 2019, 2020, 2021, 2022, 2023, 2024};
  const char* tbl_titles[] = {"Linked Data on the Web", "A Decentralized Platform for Social Apps",
                              "Solid Pods in Practice", "Personal Data Stores Revisited",
                              "Web Decentralization at Scale", "Access Control for Linked Data",
                              "Data Sovereignty on the Web", "Rethinking the Web Platform"};
  const char* tbl_venues[] = {"WWW", "WWW", "ISWC", "Commun. ACM", "WWW", "ESWC", "ISWC",
                              "Commun. ACM"};
  for (int i = 0; i < 8; ++i) {
    w.AddPublication({"https://dblp.org/rec/conf/www/BernersLee" + std::to_string(i) +
                          std::to_string(tbl_years[i] % 100),
                      tbl_titles[i], tbl_venues[i], tbl_years[i],
                      ids({"Tim Berners-Lee"}), false});
  }
  // Filler, drawing co-authors from everyone so the named people also get
  // neighbours.
  std::set<std::string> titles;
  for (const auto& p : w.publications_) titles.insert(p.title);
  while (w.publications_.size() < 420) {
    std::string title = TitleHeads()[rng.Pick(TitleHeads().size())] + " " +
                        TitleObjects()[rng.Pick(TitleObjects().size())] + " " +
                        TitleTails()[rng.Pick(TitleTails().size())];
    if (!titles.insert(title).second) continue;
    Publication p;
    p.title = title;
    p.venue = VenueNames()[rng.Pick(VenueNames().size())];
    p.year = 2000 + static_cast<int>(rng.Pick(25));
    size_t n_authors = 1 + rng.Pick(4);
    std::set<size_t> chosen;
    while (chosen.size() < n_authors) {
      chosen.insert(rng.Chance(8) ? rng.Pick(named) : named + rng.Pick(w.persons_.size() - named));
    }
    p.authors.assign(chosen.begin(), chosen.end());
    std::string first = w.persons_[p.authors[0]].name;
    first = Slug(first.substr(first.find(' ') + 1));
    std::string venue_key = Slug(p.venue);
    for (char& c : venue_key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    p.uri = "https://dblp.org/rec/conf/" + venue_key + "/" + first +
            std::to_string(w.publications_.size()) + std::to_string(p.year % 100);
    w.AddPublication(std::move(p));
  }
  w.BuildFacts();
  return w;
}

void World::BuildFacts() {
  auto uri = [](const std::string& u) { return Node{true, u, ""}; };
  auto lit = [](std::string v, std::string dt = "") { return Node{false, std::move(v), std::move(dt)}; };
  for (const auto& p : publications_) {
    for (size_t a : p.authors) facts_.push_back({uri(p.uri), Pred("authoredBy"), uri(persons_[a].uri)});
    facts_.push_back({uri(p.uri), Pred("publishedIn"), lit(p.venue)});
    facts_.push_back({uri(p.uri), Pred("yearOfPublication"), lit(std::to_string(p.year), kYearType)});
    facts_.push_back({uri(p.uri), Pred("title"), lit(p.title)});
    facts_.push_back({uri(p.uri), Pred("numberOfCreators"),
                      lit(std::to_string(p.authors.size()), kIntType)});
  }
  for (const auto& p : persons_) {
    facts_.push_back({uri(p.uri), Pred("primaryFullCreatorName"), lit(p.name)});
    if (!p.affiliation.empty()) {
      facts_.push_back({uri(p.uri), Pred("primaryAffiliation"), lit(p.affiliation)});
    }
  }
  for (size_t i = 0; i < facts_.size(); ++i) {
    by_subject_.emplace(facts_[i].subject.value, i);
    by_object_.emplace(facts_[i].object.value, i);
  }
}

std::vector<const Fact*> World::Match(const Node* subject, const std::string& predicate,
                                      const Node* object) const {
  std::vector<const Fact*> out;
  auto accept = [&](const Fact& f) {
    if (!predicate.empty() && f.predicate != predicate) return;
    if (subject && !(f.subject == *subject)) return;
    if (object && !(f.object == *object)) return;
    out.push_back(&f);
  };
  if (subject) {
    auto [b, e] = by_subject_.equal_range(subject->value);
    for (auto it = b; it != e; ++it) accept(facts_[it->second]);
  } else if (object) {
    auto [b, e] = by_object_.equal_range(object->value);
    for (auto it = b; it != e; ++it) accept(facts_[it->second]);
  } else {
    for (const auto& f : facts_) accept(f);
  }
  return out;
}

std::string World::SearchResponse(EntityKind kind, const std::string& query, int hits) const {
  struct Hit {
    int score;
    json info;
  };
  std::vector<Hit> found;
  std::vector<std::string> q = Words(query);
  auto matches = [&](const std::string& label, int* extra) {
    std::vector<std::string> l = Words(label);
    std::set<std::string> have(l.begin(), l.end());
    for (const auto& w : q) {
      if (!have.count(w)) return false;
    }
    *extra = static_cast<int>(l.size()) - static_cast<int>(q.size());
    return !q.empty();
  };
  int extra = 0;
  if (kind == EntityKind::kPublication) {
    for (const auto& p : publications_) {
      if (!matches(p.title, &extra)) continue;
      json authors = json::array();
      for (size_t a : p.authors) {
        std::string pid = persons_[a].uri.substr(std::string("https://dblp.org/pid/").size());
        authors.push_back({{"@pid", pid}, {"text", persons_[a].name}});
      }
      std::string key = p.uri.substr(std::string("https://dblp.org/rec/").size());
      json info = {{"authors", {{"author", authors}}},
                   {"title", p.title + "."},
                   {"venue", p.venue},
                   {"year", std::to_string(p.year)},
                   {"type", p.preprint ? "Informal and Other Publications"
                                       : "Conference and Workshop Papers"},
                   {"key", key},
                   {"url", p.uri}};
      found.push_back({std::max(1, 20 - 2 * std::max(0, extra) - (p.preprint ? 1 : 0)), info});
    }
  } else if (kind == EntityKind::kPerson) {
    for (const auto& p : persons_) {
      if (!matches(p.name, &extra)) continue;
      found.push_back({std::max(1, 20 - 2 * std::max(0, extra)),
                       {{"author", p.name}, {"url", p.uri}}});
    }
  } else if (kind == EntityKind::kVenue) {
    for (const auto& v : Venues()) {
      if (!matches(v, &extra)) continue;
      std::string slug = Slug(v);
      for (char& c : slug) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      found.push_back({std::max(1, 20 - 2 * std::max(0, extra)),
                       {{"venue", v},
                        {"acronym", v},
                        {"type", "Conference or Workshop"},
                        {"url", "https://dblp.org/db/conf/" + slug + "/"}}});
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const Hit& a, const Hit& b) { return a.score > b.score; });
  size_t total = found.size();
  if (found.size() > static_cast<size_t>(hits)) found.resize(hits);
  json hit_list = json::array();
  for (size_t i = 0; i < found.size(); ++i) {
    hit_list.push_back({{"@score", std::to_string(found[i].score)},
                        {"@id", std::to_string(1000 + i)},
                        {"info", found[i].info},
                        {"url", "URL#" + std::to_string(1000 + i)}});
  }
  json hits_obj = {{"@total", std::to_string(total)},
                   {"@computed", std::to_string(total)},
                   {"@sent", std::to_string(found.size())},
                   {"@first", "0"}};
  if (!found.empty()) hits_obj["hit"] = hit_list;
  json doc = {{"result",
               {{"query", query + "*"},
                {"status", {{"@code", "200"}, {"text", "OK"}}},
                {"time", {{"@unit", "msecs"}, {"text", "0.42"}}},
                {"hits", hits_obj}}}};
  return doc.dump();
}

}  // namespace dblpqa::synth
