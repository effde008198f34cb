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


// Shared helpers for the unit and acceptance tests.

#ifndef DBLPQA_TESTS_TEST_UTIL_H_
#define DBLPQA_TESTS_TEST_UTIL_H_

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dblpqa/config.h"
#include "dblpqa/http.h"
#include "dblpqa/logical_form.h"
#include "dblpqa/session.h"
#include "dblpqa/vocabulary.h"

namespace dblpqa::testing {

inline std::filesystem::path SourceDir() { return DBLPQA_SOURCE_DIR; }
inline std::filesystem::path DataDir() { return SourceDir() / "data"; }

inline const Vocabulary& TestVocab() {
  static const Vocabulary vocab =
      Vocabulary::FromManifestFile((DataDir() / "schema.manifest").string());
  return vocab;
}

// The demo walkthrough's logical form, long title abbreviated.
inline constexpr char kWalkthroughBlock[] =
    "SELECT DISTINCT ?firstanswer ?secondanswer WHERE\n"
    "{\n"
    "    the_BERT_paper <authoredBy> ?firstanswer <dot>\n"
    "    ?x <authoredBy> ?firstanswer <dot>\n"
    "    ?x <publishedIn> ?secondanswer FILTER\n"
    "    ( ?x <isnot> the_BERT_paper )\n"
    "}";

inline constexpr char kBertTitle[] =
    "BERT: Pre-training of Deep Bidirectional Transformers for Language Understanding";
inline constexpr char kBertQuestion[] =
    "please enumerate the authors of 'BERT: Pre-training of Deep Bidirectional "
    "Transformers for Language Understanding' along with the venues where they have "
    "published other papers.";
inline constexpr char kBertFormalUri[] = "https://dblp.org/rec/conf/naacl/DevlinCLT19";
inline constexpr char kBertPreprintUri[] = "https://dblp.org/rec/journals/corr/abs-1810-04805";
inline constexpr char kSecondAuthor[] = "https://dblp.org/pid/69/4618";
inline constexpr char kTimBernersLee[] = "https://dblp.org/pid/b/TimBernersLee";
inline constexpr char kTblQuestion[] =
    "what papers has Tim Berners-Lee published in the last 5 years?";

// The walkthrough block with the abbreviation spelled out.
inline std::string WalkthroughForm() {
  std::string text = kWalkthroughBlock;
  const std::string from = "the_BERT_paper";
  const std::string to = MentionTokenFromSurface(kBertTitle);
  for (size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos)) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
  return text;
}

inline std::vector<std::string> Tokens(const std::string& text) {
  return TokenizeLogicalForm(text);
}

// Scriptable HTTP client that records every request.
class FakeHttp : public HttpClient {
 public:
  using Handler = std::function<HttpResponse(const HttpRequest&)>;

  explicit FakeHttp(Handler handler) : handler_(std::move(handler)) {}

  HttpResponse Send(const HttpRequest& request) override {
    {
      std::lock_guard<std::mutex> lock(mu_);
      log_.push_back(request);
    }
    return handler_(request);
  }

  std::vector<HttpRequest> log() const {
    std::lock_guard<std::mutex> lock(mu_);
    return log_;
  }

 private:
  Handler handler_;
  mutable std::mutex mu_;
  std::vector<HttpRequest> log_;
};

// Fails every request: replay runs must never reach it.
inline std::shared_ptr<FakeHttp> NoNetwork() {
  return std::make_shared<FakeHttp>([](const HttpRequest& r) -> HttpResponse {
    throw TransportError(TransportError::Kind::kUnavailable, "network disabled: " + r.url);
  });
}

// JSON-pointer paths that differ between two session states.
inline std::vector<std::string> ChangedPaths(const nlohmann::json& before,
                                             const nlohmann::json& after) {
  std::vector<std::string> out;
  for (const auto& op : nlohmann::json::diff(before, after)) {
    out.push_back(op["path"].get<std::string>());
  }
  return out;
}

// Paths outside the allowed prefixes.
inline std::vector<std::string> UnexpectedChanges(const nlohmann::json& before,
                                                  const nlohmann::json& after,
                                                  const std::vector<std::string>& allowed) {
  std::vector<std::string> out;
  for (const auto& path : ChangedPaths(before, after)) {
    bool ok = false;
    for (const auto& prefix : allowed) {
      ok = ok || path.compare(0, prefix.size(), prefix) == 0;
    }
    if (!ok) out.push_back(path);
  }
  return out;
}

inline AppConfig ReplayConfig() {
  AppConfig c = ParseConfig(
      R"({"schema_manifest": "schema.manifest", "templates": "templates.jsonl",
          "fixtures": {"mode": "replay", "dir": "fixtures"},
          "translator": {"mode": "rule-based", "patterns": "patterns.json",
                         "reference_year": 2024}})",
      DataDir());
  return c;
}

inline std::shared_ptr<Pipeline> ReplayPipeline(
    std::shared_ptr<HttpClient> http = NoNetwork()) {
  return BuildPipeline(ReplayConfig(), std::move(http));
}

}  // namespace dblpqa::testing

#endif  // DBLPQA_TESTS_TEST_UTIL_H_
