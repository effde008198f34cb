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


// A small deterministic bibliographic graph shaped like the DBLP KG, used to
// produce the synthetic training split, recorded responses and gold answers
// when the live services are out of reach.

#ifndef DBLPQA_SYNTH_WORLD_H_
#define DBLPQA_SYNTH_WORLD_H_

#include <map>
#include <tuple>
#include <string>
#include <vector>

#include "dblpqa/entity_linker.h"
#include "dblpqa/logical_form.h"
#include "dblpqa/sparql_client.h"
#include "dblpqa/vocabulary.h"

namespace dblpqa::synth {

inline constexpr char kSchema[] = "https://dblp.org/rdf/schema#";
inline constexpr char kYearType[] = "http://www.w3.org/2001/XMLSchema#gYear";
inline constexpr char kIntType[] = "http://www.w3.org/2001/XMLSchema#integer";

// Record URIs of the walkthrough paper.
inline constexpr char kBertFormal[] = "https://dblp.org/rec/conf/naacl/DevlinCLT19";
inline constexpr char kBertPreprint[] = "https://dblp.org/rec/journals/corr/abs-1810-04805";
inline constexpr char kBertTitle[] =
    "BERT: Pre-training of Deep Bidirectional Transformers for Language Understanding";
// Second author of the walkthrough paper.
inline constexpr char kChangPid[] = "https://dblp.org/pid/69/4618";

struct Person {
  std::string uri;
  std::string name;
  std::string affiliation;  // may be empty
};

struct Publication {
  std::string uri;
  std::string title;
  std::string venue;
  int year = 0;
  std::vector<size_t> authors;  // indices into persons
  bool preprint = false;
};

// RDF object: a URI, or a literal with optional datatype.
struct Node {
  bool is_uri = false;
  std::string value;
  std::string datatype;

  bool operator==(const Node&) const = default;
  bool operator<(const Node& o) const {
    return std::tie(is_uri, value, datatype) < std::tie(o.is_uri, o.value, o.datatype);
  }
};

struct Fact {
  Node subject;
  std::string predicate;  // full URI
  Node object;
};

class World {
 public:
  // Deterministic for a given seed.
  static World Generate(unsigned seed = 2023);

  const std::vector<Person>& persons() const { return persons_; }
  const std::vector<Publication>& publications() const { return publications_; }
  const std::vector<Fact>& facts() const { return facts_; }
  std::vector<std::string> Venues() const;

  const Person* FindPerson(const std::string& name) const;
  const Publication* FindPublication(const std::string& uri) const;

  // Search API stand-in: every query word occurs in the label; formal
  // records outrank pre-prints. Returns the response body in the DBLP
  // search API JSON layout.
  std::string SearchResponse(EntityKind kind, const std::string& query, int hits) const;

  // Facts matching a pattern; empty strings are wildcards.
  std::vector<const Fact*> Match(const Node* subject, const std::string& predicate,
                                 const Node* object) const;

 private:
  void AddPerson(std::string uri, std::string name, std::string affiliation);
  void AddPublication(Publication p);
  void BuildFacts();

  std::vector<Person> persons_;
  std::vector<Publication> publications_;
  std::vector<Fact> facts_;
  std::multimap<std::string, size_t> by_subject_;
  std::multimap<std::string, size_t> by_object_;
};

// Evaluates a subset-grammar query over the world. Throws ParseError for
// text outside the subset.
AnswerTable Evaluate(const World& world, const LogicalForm& form, const Vocabulary& vocab);
AnswerTable EvaluateSparql(const World& world, const std::string& sparql,
                           const Vocabulary& vocab);

// The relation vocabulary the world uses.
Vocabulary WorldVocabulary();

}  // namespace dblpqa::synth

#endif  // DBLPQA_SYNTH_WORLD_H_
