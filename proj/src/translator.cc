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

#include "dblpqa/translator.h"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dblpqa {

namespace {

using json = nlohmann::json;

constexpr char kSpanMarker = '\x01';

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return std::string(s);
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsClosingBoundary(std::string_view text, size_t pos) {
  if (pos >= text.size()) return true;
  char c = text[pos];
  return IsSpace(c) || std::string_view(",.?!;:)").find(c) != std::string_view::npos;
}

struct QuoteStyle {
  std::string_view open;
  std::string_view close;
};

constexpr QuoteStyle kQuotes[] = {
    {"\xE2\x80\x9C", "\xE2\x80\x9D"},  // “ ”
    {"\xE2\x80\x98", "\xE2\x80\x99"},  // ‘ ’
    {"\"", "\""},
    {"'", "'"},
};

// Removes quoted spans, replacing each with a marker token.
std::string StripQuotedSpans(std::string_view q, std::vector<std::string>* spans) {
  std::string out;
  size_t i = 0;
  while (i < q.size()) {
    bool matched = false;
    bool left_ok = i == 0 || IsSpace(q[i - 1]) || q[i - 1] == '(';
    for (const auto& style : kQuotes) {
      if (!left_ok || q.substr(i, style.open.size()) != style.open) continue;
      size_t from = i + style.open.size();
      size_t close = q.find(style.close, from);
      // ASCII quotes must close at a word boundary so apostrophes inside the
      // span ("Alzheimer's") do not end it.
      while (close != std::string_view::npos && style.close.size() == 1 &&
             !IsClosingBoundary(q, close + 1)) {
        close = q.find(style.close, close + 1);
      }
      if (close == std::string_view::npos || close == from) continue;
      std::string content = Trim(q.substr(from, close - from));
      if (content.empty()) continue;
      spans->push_back(std::move(content));
      out += ' ';
      out += kSpanMarker;
      out += ' ';
      i = close + style.close.size();
      matched = true;
      break;
    }
    if (!matched) out.push_back(q[i++]);
  }
  return out;
}

const std::set<std::string>& RunStopWords() {
  static const std::set<std::string> kWords = {
      "What", "Which", "Who", "Whom", "Whose", "When", "Where", "Why", "How",
      "Please", "List", "Enumerate", "Name", "Give", "Show", "Tell", "Find",
      "Return", "Did", "Does", "Do", "Is", "Was", "Were", "Are", "Has", "Have",
      "Had", "Can", "Could", "In", "On", "The", "A", "An", "I", "Of", "And"};
  return kWords;
}

const std::set<std::string>& RunConnectors() {
  static const std::set<std::string> kWords = {
      "of", "is", "for", "and", "the", "in", "on", "a", "an", "to", "with",
      "at", "from", "by", "de", "van", "von", "der", "la", "le"};
  return kWords;
}

bool IsCapitalized(std::string_view w) {
  return !w.empty() && std::isupper(static_cast<unsigned char>(w.front()));
}

std::vector<std::string> NameRuns(std::string_view masked) {
  struct Word {
    std::string text;
    bool ends_clause;  // trailing punctuation closes the run
    bool marker;
  };
  std::vector<Word> words;
  std::istringstream in{std::string(masked)};
  std::string w;
  while (in >> w) {
    if (w.size() == 1 && w[0] == kSpanMarker) {
      words.push_back({"", true, true});
      continue;
    }
    bool ends = false;
    while (!w.empty() && std::string_view(",.?!;:").find(w.back()) != std::string_view::npos) {
      w.pop_back();
      ends = true;
    }
    while (!w.empty() && (w.front() == '(' || w.front() == '"')) w.erase(0, 1);
    while (!w.empty() && (w.back() == ')' || w.back() == '"')) {
      w.pop_back();
      ends = true;
    }
    words.push_back({w, ends, false});
  }
  std::vector<std::string> runs;
  std::vector<std::string> current;
  auto flush = [&] {
    if (!current.empty()) {
      std::string run;
      for (const auto& part : current) {
        if (!run.empty()) run += ' ';
        run += part;
      }
      runs.push_back(run);
    }
    current.clear();
  };
  for (size_t i = 0; i < words.size(); ++i) {
    const Word& word = words[i];
    if (word.marker) {
      flush();
      continue;
    }
    if (IsCapitalized(word.text) &&
        !(current.empty() && RunStopWords().count(word.text))) {
      current.push_back(word.text);
    } else if (!current.empty() && RunConnectors().count(word.text) &&
               i + 1 < words.size() && !words[i + 1].marker &&
               IsCapitalized(words[i + 1].text) && !word.ends_clause) {
      current.push_back(word.text);
    } else {
      flush();
    }
    if (word.ends_clause) flush();
  }
  flush();
  return runs;
}

bool IsWordChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

// Finds cue at a word boundary at or after from; npos when absent.
size_t FindCue(const std::string& text, const std::string& cue, size_t from) {
  size_t pos = text.find(cue, from);
  while (pos != std::string::npos) {
    bool left = pos == 0 || !IsWordChar(text[pos - 1]) || !IsWordChar(cue.front());
    size_t end = pos + cue.size();
    bool right = end >= text.size() || !IsWordChar(text[end]) || !IsWordChar(cue.back());
    if (left && right) return pos;
    pos = text.find(cue, pos + 1);
  }
  return std::string::npos;
}

std::optional<SlotExtractor> ParseExtractor(const std::string& name) {
  if (name == "entity") return SlotExtractor::kEntity;
  if (name == "year") return SlotExtractor::kYear;
  if (name == "years-ago") return SlotExtractor::kYearsAgo;
  return std::nullopt;
}

std::string_view ExtractorName(SlotExtractor e) {
  switch (e) {
    case SlotExtractor::kEntity: return "entity";
    case SlotExtractor::kYear: return "year";
    case SlotExtractor::kYearsAgo: return "years-ago";
  }
  return "entity";
}

[[noreturn]] void PatternFail(const std::string& what) {
  throw Error(ErrorCode::kPatternFileError, "pattern file: " + what);
}

}  // namespace

int CurrentYear() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  return utc.tm_year + 1900;
}

QuestionSpans ExtractQuestionSpans(std::string_view question) {
  QuestionSpans spans;
  std::string masked = StripQuotedSpans(question, &spans.quoted);
  spans.name_runs = NameRuns(masked);
  spans.cue_text = Lower(masked);

  static const std::regex kYear(R"((^|[^0-9])((?:19|20)[0-9]{2})(?=$|[^0-9]))");
  for (std::sregex_iterator it(masked.begin(), masked.end(), kYear), end; it != end; ++it) {
    spans.years.push_back((*it)[2].str());
  }
  static const std::regex kYearsAgo(R"((?:last|past) ([0-9]{1,3}) years?)");
  for (std::sregex_iterator it(spans.cue_text.begin(), spans.cue_text.end(), kYearsAgo), end;
       it != end; ++it) {
    spans.years_ago.push_back(std::stoi((*it)[1].str()));
  }
  return spans;
}

std::vector<QuestionPattern> LoadPatterns(std::string_view json_text,
                                          const Vocabulary& vocab) {
  json doc = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) PatternFail("not a JSON object");
  if (!doc.contains("patterns") || !doc["patterns"].is_array()) {
    PatternFail("missing \"patterns\" array");
  }
  std::vector<QuestionPattern> out;
  std::set<std::vector<std::string>> seen_cues;
  std::set<std::string> seen_names;
  for (const auto& entry : doc["patterns"]) {
    QuestionPattern p;
    p.name = entry.value("name", "");
    if (p.name.empty()) PatternFail("pattern without a name");
    if (!seen_names.insert(p.name).second) PatternFail("duplicate name " + p.name);
    p.description = entry.value("description", "");
    if (!entry.contains("cues") || !entry["cues"].is_array() || entry["cues"].empty()) {
      PatternFail(p.name + ": \"cues\" must be a non-empty array");
    }
    for (const auto& cue : entry["cues"]) {
      if (!cue.is_string() || cue.get<std::string>().empty()) {
        PatternFail(p.name + ": cues must be non-empty strings");
      }
      p.cues.push_back(Lower(cue.get<std::string>()));
    }
    if (!seen_cues.insert(p.cues).second) {
      PatternFail(p.name + ": duplicate trigger");
    }
    p.template_text = entry.value("template", "");
    try {
      p.template_form = ParseLogicalForm(p.template_text, vocab);
    } catch (const ParseError& e) {
      PatternFail(p.name + ": template does not parse: " + e.what());
    }
    std::set<int> placeholders;
    for (const Term* t : CollectTerms(p.template_form)) {
      if (t->kind == Term::Kind::kPlaceholder) placeholders.insert(PlaceholderIndex(t->text));
    }
    if (entry.contains("slots")) {
      if (!entry["slots"].is_object()) PatternFail(p.name + ": \"slots\" must be an object");
      for (const auto& [token, kind] : entry["slots"].items()) {
        int index = PlaceholderIndex(token);
        if (index == 0) PatternFail(p.name + ": bad slot " + token);
        auto extractor = kind.is_string() ? ParseExtractor(kind.get<std::string>())
                                          : std::nullopt;
        if (!extractor) PatternFail(p.name + ": unknown extractor for " + token);
        p.slots[index] = *extractor;
      }
    }
    std::set<int> slot_keys;
    for (const auto& [index, ignored] : p.slots) slot_keys.insert(index);
    if (slot_keys != placeholders) {
      PatternFail(p.name + ": every placeholder needs exactly one slot extractor");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<QuestionPattern> LoadPatternFile(const std::string& path,
                                             const Vocabulary& vocab) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileUnreadable, "cannot read pattern file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return LoadPatterns(buf.str(), vocab);
}

PatternTranslator::PatternTranslator(std::vector<QuestionPattern> patterns,
                                     Vocabulary vocab, int reference_year)
    : patterns_(std::move(patterns)),
      vocab_(std::move(vocab)),
      reference_year_(reference_year) {}

std::optional<std::string> PatternTranslator::TryPattern(
    const QuestionPattern& pattern, const QuestionSpans& spans) const {
  size_t pos = 0;
  for (const auto& cue : pattern.cues) {
    size_t found = FindCue(spans.cue_text, cue, pos);
    if (found == std::string::npos) return std::nullopt;
    pos = found + cue.size();
  }

  const auto& entities = spans.quoted.empty() ? spans.name_runs : spans.quoted;
  size_t want_entities = 0, want_years = 0, want_ago = 0;
  for (const auto& [index, extractor] : pattern.slots) {
    switch (extractor) {
      case SlotExtractor::kEntity: ++want_entities; break;
      case SlotExtractor::kYear: ++want_years; break;
      case SlotExtractor::kYearsAgo: ++want_ago; break;
    }
  }
  // Anything but an exact count is ambiguous.
  if (want_entities > 0 && entities.size() != want_entities) return std::nullopt;
  if (want_years > 0 && spans.years.size() != want_years) return std::nullopt;
  if (want_ago > 0 && spans.years_ago.size() != want_ago) return std::nullopt;

  std::map<std::string, std::string> fill;
  size_t e = 0, y = 0, a = 0;
  for (const auto& [index, extractor] : pattern.slots) {
    std::string value;
    switch (extractor) {
      case SlotExtractor::kEntity: value = MentionTokenFromSurface(entities[e++]); break;
      case SlotExtractor::kYear: value = spans.years[y++]; break;
      case SlotExtractor::kYearsAgo:
        value = std::to_string(reference_year_ - spans.years_ago[a++]);
        break;
    }
    fill[PlaceholderToken(index)] = value;
  }
  std::string text;
  for (auto& token : RenderTokens(pattern.template_form, RenderStyle::kLogicalForm, vocab_)) {
    auto it = fill.find(token);
    if (!text.empty()) text += ' ';
    text += it == fill.end() ? token : it->second;
  }
  return text;
}

LogicalForm PatternTranslator::Translate(std::string_view question) const {
  std::string q = Trim(question);
  if (q.empty()) throw Error(ErrorCode::kEmptyQuestion, "empty question");
  QuestionSpans spans = ExtractQuestionSpans(q);
  for (const auto& pattern : patterns_) {
    auto text = TryPattern(pattern, spans);
    if (!text) continue;
    try {
      return ParseLogicalForm(*text, vocab_);
    } catch (const ParseError&) {
      // An extracted span collided with a vocabulary token; try the next one.
      continue;
    }
  }
  throw Error(ErrorCode::kNoPatternMatched, "no question pattern matches: " + q);
}

std::vector<PatternInfo> PatternTranslator::ListPatterns() const {
  std::vector<PatternInfo> out;
  for (const auto& p : patterns_) {
    std::string desc = p.description;
    if (!p.slots.empty()) {
      desc += desc.empty() ? "" : " ";
      desc += "[";
      bool first = true;
      for (const auto& [index, extractor] : p.slots) {
        if (!first) desc += ", ";
        first = false;
        desc += PlaceholderToken(index) + ": " + std::string(ExtractorName(extractor));
      }
      desc += "]";
    }
    out.push_back({p.name, desc, p.cues, p.template_text});
  }
  return out;
}

// ---------------------------------------------------------------------------

ModelEndpointTranslator::ModelEndpointTranslator(ModelEndpointConfig config,
                                                 Vocabulary vocab,
                                                 std::shared_ptr<HttpClient> http)
    : config_(std::move(config)),
      vocab_(std::move(vocab)),
      http_(std::move(http)),
      in_flight_(std::clamp(config_.max_in_flight, 1, 1024)) {
  if (config_.endpoint_url.empty()) {
    throw Error(ErrorCode::kConfigError, "model endpoint URL is required");
  }
  if (config_.timeout.count() <= 0) {
    throw Error(ErrorCode::kConfigError, "model endpoint timeout must be positive");
  }
}

LogicalForm ModelEndpointTranslator::Translate(std::string_view question) const {
  std::string q = Trim(question);
  if (q.empty()) throw Error(ErrorCode::kEmptyQuestion, "empty question");

  HttpRequest request;
  request.method = "POST";
  request.url = config_.endpoint_url;
  request.body = json{{"question", q}}.dump();
  request.content_type = "application/json";
  request.headers["Accept"] = "application/json";
  request.timeout = config_.timeout;

  HttpResponse response;
  in_flight_.acquire();
  try {
    response = http_->Send(request);
  } catch (const TransportError& e) {
    in_flight_.release();
    throw Error(e.kind() == TransportError::Kind::kTimeout
                    ? ErrorCode::kEndpointTimeout
                    : ErrorCode::kEndpointUnavailable,
                std::string("model endpoint: ") + e.what());
  }
  in_flight_.release();

  if (response.status < 200 || response.status >= 300) {
    throw Error(ErrorCode::kEndpointUnavailable,
                "model endpoint returned HTTP " + std::to_string(response.status));
  }
  json doc = json::parse(response.body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("tokens") ||
      !doc["tokens"].is_string()) {
    throw MalformedOutputError("model response lacks a \"tokens\" string",
                               response.body);
  }
  std::string tokens = doc["tokens"].get<std::string>();
  if (TokenizeLogicalForm(tokens).size() >
      static_cast<size_t>(std::max(config_.max_output_tokens, 1))) {
    throw MalformedOutputError("model output exceeds max_output_tokens", tokens);
  }
  try {
    return ParseLogicalForm(tokens, vocab_);
  } catch (const ParseError& e) {
    throw MalformedOutputError(e.what(), tokens);
  }
}

}  // namespace dblpqa
