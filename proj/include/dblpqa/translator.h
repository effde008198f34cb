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

// Question -> logical form. Two implementations share one interface: a
// deterministic pattern translator shipped with a curated pattern file, and an
// adapter for an externally hosted sequence-to-sequence model.

#ifndef DBLPQA_TRANSLATOR_H_
#define DBLPQA_TRANSLATOR_H_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "dblpqa/error.h"
#include "dblpqa/http.h"
#include "dblpqa/logical_form.h"
#include "dblpqa/vocabulary.h"

namespace dblpqa {

// Model output that does not parse. The raw token text stays available so
// template retrieval can still snap it to the nearest template.
class MalformedOutputError : public Error {
 public:
  MalformedOutputError(const std::string& message, std::string raw_tokens)
      : Error(ErrorCode::kMalformedModelOutput, message),
        raw_tokens_(std::move(raw_tokens)) {}

  const std::string& raw_tokens() const { return raw_tokens_; }

 private:
  std::string raw_tokens_;
};

struct PatternInfo {
  std::string name;
  std::string description;
  std::vector<std::string> cues;
  std::string template_text;
};

class Translator {
 public:
  virtual ~Translator() = default;

  // Throws EmptyQuestion, NoPatternMatched, EndpointUnavailable,
  // EndpointTimeout or MalformedOutputError.
  virtual LogicalForm Translate(std::string_view question) const = 0;

  virtual std::vector<PatternInfo> ListPatterns() const { return {}; }
};

// ---------------------------------------------------------------------------
// Pattern translator.

enum class SlotExtractor {
  kEntity,    // quoted span, else a title-cased run
  kYear,      // a 4-digit year
  kYearsAgo,  // "last N years" -> reference year - N
};

struct QuestionPattern {
  std::string name;
  std::string description;
  // Lower-case cues that must occur in this order.
  std::vector<std::string> cues;
  TemplateForm template_form;
  std::string template_text;
  std::map<int, SlotExtractor> slots;  // placeholder index -> extractor
};

// Pattern file (JSON):
//   {"patterns": [{"name": "...", "description": "...",
//                  "cues": ["authors of", "venues"],
//                  "template": "SELECT ... <topic1> ...",
//                  "slots": {"<topic1>": "entity"}}]}
std::vector<QuestionPattern> LoadPatterns(std::string_view json_text,
                                          const Vocabulary& vocab);
std::vector<QuestionPattern> LoadPatternFile(const std::string& path,
                                             const Vocabulary& vocab);

// Spans found in a question, exposed for tests.
struct QuestionSpans {
  std::vector<std::string> quoted;
  std::vector<std::string> name_runs;
  std::vector<std::string> years;
  std::vector<int> years_ago;
  std::string cue_text;  // lower-cased, quoted spans blanked out
};

QuestionSpans ExtractQuestionSpans(std::string_view question);

class PatternTranslator : public Translator {
 public:
  PatternTranslator(std::vector<QuestionPattern> patterns, Vocabulary vocab,
                    int reference_year);

  LogicalForm Translate(std::string_view question) const override;
  std::vector<PatternInfo> ListPatterns() const override;

  int reference_year() const { return reference_year_; }

 private:
  std::optional<std::string> TryPattern(const QuestionPattern& pattern,
                                        const QuestionSpans& spans) const;

  std::vector<QuestionPattern> patterns_;
  Vocabulary vocab_;
  int reference_year_;
};

// ---------------------------------------------------------------------------
// Model endpoint adapter: POST {"question": ...} -> {"tokens": "..."}.

struct ModelEndpointConfig {
  std::string endpoint_url;
  std::chrono::milliseconds timeout{30000};
  int max_output_tokens = 512;
  int max_in_flight = 4;
};

class ModelEndpointTranslator : public Translator {
 public:
  ModelEndpointTranslator(ModelEndpointConfig config, Vocabulary vocab,
                          std::shared_ptr<HttpClient> http);

  LogicalForm Translate(std::string_view question) const override;

 private:
  ModelEndpointConfig config_;
  Vocabulary vocab_;
  std::shared_ptr<HttpClient> http_;
  mutable std::counting_semaphore<1024> in_flight_;
};

// Current calendar year (UTC).
int CurrentYear();

}  // namespace dblpqa

#endif  // DBLPQA_TRANSLATOR_H_
