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

#include "dblpqa/vocabulary.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "dblpqa/error.h"

namespace dblpqa {

namespace {

struct OperatorEntry {
  std::string_view token;
  std::string_view symbol;
};

constexpr OperatorEntry kOperatorTable[] = {
    {"<isnot>", "!="}, {"<is>", "="},   {"<lt>", "<"},
    {"<gt>", ">"},     {"<leq>", "<="}, {"<geq>", ">="},
};

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool IsWellFormedRelationToken(std::string_view token) {
  if (token.size() < 3 || token.front() != '<' || token.back() != '>') {
    return false;
  }
  std::string_view body = token.substr(1, token.size() - 2);
  if (!std::isalpha(static_cast<unsigned char>(body.front()))) return false;
  return std::all_of(body.begin(), body.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

const std::vector<std::string_view>& Vocabulary::Keywords() {
  static const std::vector<std::string_view> kKeywords = {
      "SELECT", "DISTINCT", "WHERE", "FILTER", "ASK",  "COUNT",
      "GROUP",  "BY",       "ORDER", "LIMIT",  "UNION", "BIND",
      "AS",     "DESC",     "ASC",   "NOT",    "EXISTS"};
  return kKeywords;
}

const std::vector<std::string_view>& Vocabulary::Operators() {
  static const std::vector<std::string_view> kOps = [] {
    std::vector<std::string_view> ops;
    for (const auto& e : kOperatorTable) ops.push_back(e.token);
    return ops;
  }();
  return kOps;
}

bool Vocabulary::IsKeyword(std::string_view token) {
  const auto& kw = Keywords();
  return std::find(kw.begin(), kw.end(), token) != kw.end();
}

bool Vocabulary::IsOperator(std::string_view token) {
  return OperatorSymbol(token).has_value();
}

bool Vocabulary::IsStructural(std::string_view token) {
  return token == "{" || token == "}" || token == "(" || token == ")" ||
         token == "<dot>";
}

bool Vocabulary::IsRelation(std::string_view token) const {
  return relations_.find(token) != relations_.end();
}

std::optional<TokenClass> Vocabulary::Classify(std::string_view token) const {
  if (IsKeyword(token)) return TokenClass::kKeyword;
  if (IsStructural(token)) return TokenClass::kStructural;
  if (IsOperator(token)) return TokenClass::kOperator;
  if (IsRelation(token)) return TokenClass::kRelation;
  return std::nullopt;
}

const std::string* Vocabulary::PredicateUri(std::string_view token) const {
  auto it = relations_.find(token);
  return it == relations_.end() ? nullptr : &it->second;
}

const std::string* Vocabulary::RelationToken(std::string_view uri) const {
  auto it = by_uri_.find(uri);
  return it == by_uri_.end() ? nullptr : &it->second;
}

std::optional<std::string_view> Vocabulary::OperatorSymbol(
    std::string_view token) {
  for (const auto& e : kOperatorTable) {
    if (e.token == token) return e.symbol;
  }
  return std::nullopt;
}

std::optional<std::string_view> Vocabulary::OperatorToken(
    std::string_view symbol) {
  for (const auto& e : kOperatorTable) {
    if (e.symbol == symbol) return e.token;
  }
  return std::nullopt;
}

void Vocabulary::AddRelation(std::string token, std::string uri, size_t line) {
  auto fail = [line](const std::string& what) {
    throw Error(ErrorCode::kConfigError,
                "schema manifest line " + std::to_string(line) + ": " + what);
  };
  if (!IsWellFormedRelationToken(token)) {
    fail("malformed relation token '" + token + "'");
  }
  if (IsOperator(token) || IsStructural(token) || IsPlaceholderToken(token)) {
    fail("relation token '" + token + "' collides with a reserved token");
  }
  if (!IsAbsoluteUri(uri)) fail("predicate '" + uri + "' is not absolute");
  if (relations_.count(token)) fail("duplicate relation token " + token);
  if (by_uri_.count(uri)) fail("predicate mapped twice: " + uri);
  by_uri_.emplace(uri, token);
  relations_.emplace(std::move(token), std::move(uri));
}

Vocabulary Vocabulary::FromManifestText(std::string_view text) {
  Vocabulary vocab;
  std::istringstream in{std::string(text)};
  std::string raw;
  size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    // '#' inside a URI fragment is legal, so only a leading '#' or one
    // preceded by whitespace opens a comment.
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '#' &&
          (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1])))) {
        line = line.substr(0, i);
        break;
      }
    }
    line = Trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigError, "schema manifest line " +
                                               std::to_string(line_no) +
                                               ": expected 'token = uri'");
    }
    std::string uri(Trim(line.substr(eq + 1)));
    if (uri.size() > 2 && uri.front() == '<' && uri.back() == '>') {
      uri = uri.substr(1, uri.size() - 2);
    }
    vocab.AddRelation(std::string(Trim(line.substr(0, eq))), std::move(uri),
                      line_no);
  }
  return vocab;
}

Vocabulary Vocabulary::FromManifestFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kFileUnreadable,
                "cannot read schema manifest " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return FromManifestText(buf.str());
}

bool IsPlaceholderToken(std::string_view token) {
  return PlaceholderIndex(token) > 0;
}

int PlaceholderIndex(std::string_view token) {
  constexpr std::string_view kPrefix = "<topic";
  if (token.size() <= kPrefix.size() + 1 || token.substr(0, 6) != kPrefix ||
      token.back() != '>') {
    return 0;
  }
  std::string_view digits = token.substr(6, token.size() - 7);
  if (digits.empty() || digits.size() > 6 || digits.front() == '0') return 0;
  int value = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return 0;
    value = value * 10 + (c - '0');
  }
  return value;
}

std::string PlaceholderToken(int index) {
  return "<topic" + std::to_string(index) + ">";
}

bool IsAbsoluteUri(std::string_view text) {
  size_t colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 >= text.size()) {
    return false;
  }
  if (!std::isalpha(static_cast<unsigned char>(text.front()))) return false;
  for (size_t i = 1; i < colon; ++i) {
    char c = text[i];
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  return std::none_of(text.begin(), text.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>';
  });
}

}  // namespace dblpqa
