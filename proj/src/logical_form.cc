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

#include "dblpqa/logical_form.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

#include "dblpqa/error.h"

namespace dblpqa {

bool NotExists::operator==(const NotExists& other) const {
  return pattern == other.pattern;
}

bool Union::operator==(const Union& other) const {
  return branches == other.branches;
}

Term Term::Placeholder(int index) {
  return {Kind::kPlaceholder, PlaceholderToken(index)};
}

namespace {

constexpr std::string_view kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

// ---------------------------------------------------------------------------
// Tokens shared by both lexers.

enum class TokType {
  kKeyword,
  kLBrace,
  kRBrace,
  kLParen,
  kRParen,
  kDot,
  kOperator,
  kRelation,
  kVariable,
  kInteger,
  kDecimal,
  kString,
  kUri,
  kPlaceholder,
  kMention,
  kOther,    // valid SPARQL outside the modelled subset
  kInvalid,  // lexical error
  kEnd,
};

struct Token {
  TokType type;
  std::string text;
  size_t offset;
};

std::pair<size_t, size_t> LineColumn(std::string_view text, size_t offset) {
  size_t line = 1, column = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

ParseError MakeError(ErrorCode code, const std::string& message,
                     std::string_view text, size_t offset) {
  auto [line, column] = LineColumn(text, offset);
  return ParseError(code,
                    message + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")",
                    offset, line, column);
}

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

std::string ToUpper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string ToLower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Scans a quoted string starting at text[pos] (the quote). Returns the index
// one past the closing quote, or npos when unterminated. Content with escapes
// resolved goes to *content.
size_t ScanQuoted(std::string_view text, size_t pos, std::string* content) {
  char quote = text[pos];
  size_t i = pos + 1;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      char e = text[i + 1];
      switch (e) {
        case 'n': content->push_back('\n'); break;
        case 't': content->push_back('\t'); break;
        case 'r': content->push_back('\r'); break;
        default: content->push_back(e); break;
      }
      i += 2;
      continue;
    }
    if (c == quote) return i + 1;
    content->push_back(c);
    ++i;
  }
  return std::string_view::npos;
}

// ---------------------------------------------------------------------------
// Logical-form lexer.

struct RawToken {
  std::string text;
  size_t offset;
};

std::vector<RawToken> SplitLogicalForm(std::string_view text) {
  std::vector<RawToken> out;
  size_t i = 0;
  while (i < text.size()) {
    if (IsSpace(text[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    if (text[i] == '"') {
      std::string ignored;
      size_t end = ScanQuoted(text, i, &ignored);
      i = end == std::string_view::npos ? text.size() : end;
    }
    while (i < text.size() && !IsSpace(text[i])) ++i;
    out.push_back({std::string(text.substr(start, i - start)), start});
  }
  return out;
}

// Canonical form of a string literal token (quote style, escapes, language
// tag case). Returns false for malformed literals.
bool CanonicalStringLiteral(std::string_view raw, std::string* out) {
  if (raw.empty() || (raw.front() != '"' && raw.front() != '\'')) return false;
  std::string content;
  size_t end = ScanQuoted(raw, 0, &content);
  if (end == std::string_view::npos) return false;
  std::string_view suffix = raw.substr(end);
  *out = QuoteStringLiteral(content);
  if (suffix.empty()) return true;
  if (suffix.front() == '@' && suffix.size() > 1) {
    for (char c : suffix.substr(1)) {
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') return false;
    }
    *out += ToLower(suffix);
    return true;
  }
  if (suffix.size() > 4 && suffix.substr(0, 3) == "^^<" && suffix.back() == '>' &&
      IsAbsoluteUri(suffix.substr(3, suffix.size() - 4))) {
    *out += suffix;
    return true;
  }
  return false;
}

std::vector<Token> LexLogicalForm(std::string_view text,
                                  const Vocabulary& vocab) {
  std::vector<Token> tokens;
  for (auto& raw : SplitLogicalForm(text)) {
    const std::string& t = raw.text;
    Token tok{TokType::kMention, t, raw.offset};
    if (Vocabulary::IsKeyword(t)) {
      tok.type = TokType::kKeyword;
    } else if (t == "{") {
      tok.type = TokType::kLBrace;
    } else if (t == "}") {
      tok.type = TokType::kRBrace;
    } else if (t == "(") {
      tok.type = TokType::kLParen;
    } else if (t == ")") {
      tok.type = TokType::kRParen;
    } else if (t == "<dot>") {
      tok.type = TokType::kDot;
    } else if (Vocabulary::IsOperator(t)) {
      tok.type = TokType::kOperator;
    } else if (IsPlaceholderToken(t)) {
      tok.type = TokType::kPlaceholder;
    } else if (vocab.IsRelation(t)) {
      tok.type = TokType::kRelation;
    } else if (t.size() >= 2 && t.front() == '<' && t.back() == '>') {
      std::string inner = t.substr(1, t.size() - 2);
      if (!IsAbsoluteUri(inner)) {
        throw MakeError(ErrorCode::kUnknownRelationToken,
                        "unknown token " + t, text, raw.offset);
      }
      tok.type = TokType::kUri;
      tok.text = inner;
    } else if (t.size() > 1 && t.front() == '?') {
      tok.type = TokType::kVariable;
    } else if (IsIntegerLiteral(t)) {
      tok.type = TokType::kInteger;
    } else if (t.front() == '"') {
      std::string canonical;
      if (!CanonicalStringLiteral(t, &canonical)) {
        throw MakeError(ErrorCode::kUnexpectedToken,
                        "malformed string literal " + t, text, raw.offset);
      }
      tok.type = TokType::kString;
      tok.text = canonical;
    }
    tokens.push_back(std::move(tok));
  }
  tokens.push_back({TokType::kEnd, "", text.size()});
  return tokens;
}

// ---------------------------------------------------------------------------
// SPARQL lexer.

const std::set<std::string>& SubsetKeywords() {
  static const std::set<std::string> kWords = {
      "OPTIONAL", "PREFIX",   "BASE",     "CONSTRUCT", "DESCRIBE",
      "MINUS",    "VALUES",   "SERVICE",  "GRAPH",     "HAVING",
      "OFFSET",   "FROM",     "NAMED",    "REDUCED",   "IN",
      "BIND",     "SUM",      "MIN",      "MAX",       "AVG",
      "SAMPLE",   "GROUP_CONCAT", "UNDEF", "SEPARATOR", "LOAD",
      "INSERT",   "DELETE",   "DATA",     "CLEAR",     "DROP",
      "CREATE",   "WITH",     "USING",    "SILENT",    "DEFAULT",
      "ALL",      "STR",      "LANG",     "REGEX",     "CONTAINS",
      "YEAR",     "NOW",      "BOUND",    "ISIRI",     "ISURI",
      "ISLITERAL", "LCASE",   "UCASE",    "STRLEN",    "STRSTARTS",
      "STRENDS",  "IF",       "COALESCE", "DATATYPE",  "LANGMATCHES"};
  return kWords;
}

bool IsNameStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool IsIriChar(char c) {
  return !(static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '>' ||
           c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
           c == '`' || c == '\\');
}

std::string CanonicalInteger(std::string_view digits) {
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  if (digits == "0") negative = false;
  return (negative ? "-" : "") + std::string(digits);
}

std::vector<Token> LexSparql(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  auto push = [&](TokType type, std::string t, size_t at) {
    tokens.push_back({type, std::move(t), at});
  };
  while (i < text.size()) {
    char c = text[i];
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    size_t start = i;
    switch (c) {
      case '{': push(TokType::kLBrace, "{", i++); continue;
      case '}': push(TokType::kRBrace, "}", i++); continue;
      case '(': push(TokType::kLParen, "(", i++); continue;
      case ')': push(TokType::kRParen, ")", i++); continue;
      case '.': push(TokType::kDot, "<dot>", i++); continue;
      case '=': push(TokType::kOperator, "<is>", i++); continue;
      default: break;
    }
    if (c == '<') {
      size_t j = i + 1;
      while (j < text.size() && IsIriChar(text[j])) ++j;
      if (j < text.size() && text[j] == '>') {
        std::string inner(text.substr(i + 1, j - i - 1));
        i = j + 1;
        if (IsAbsoluteUri(inner)) {
          push(TokType::kUri, inner, start);
        } else if (IsPlaceholderToken("<" + inner + ">")) {
          push(TokType::kPlaceholder, "<" + inner + ">", start);
        } else {
          push(TokType::kOther, "<" + inner + ">", start);
        }
        continue;
      }
      if (i + 1 < text.size() && text[i + 1] == '=') {
        push(TokType::kOperator, "<leq>", i);
        i += 2;
      } else {
        push(TokType::kOperator, "<lt>", i++);
      }
      continue;
    }
    if (c == '>') {
      if (i + 1 < text.size() && text[i + 1] == '=') {
        push(TokType::kOperator, "<geq>", i);
        i += 2;
      } else {
        push(TokType::kOperator, "<gt>", i++);
      }
      continue;
    }
    if (c == '!') {
      if (i + 1 < text.size() && text[i + 1] == '=') {
        push(TokType::kOperator, "<isnot>", i);
        i += 2;
      } else {
        push(TokType::kOther, "!", i++);
      }
      continue;
    }
    if (c == '?' || c == '$') {
      size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_')) {
        ++j;
      }
      if (j == i + 1) {
        push(TokType::kInvalid, std::string(1, c), i++);
        continue;
      }
      push(TokType::kVariable, "?" + std::string(text.substr(i + 1, j - i - 1)),
           start);
      i = j;
      continue;
    }
    if (c == '"' || c == '\'') {
      bool long_quote = text.substr(i, 3) == std::string(3, c);
      std::string content;
      size_t end = long_quote ? std::string_view::npos : ScanQuoted(text, i, &content);
      if (long_quote) {
        size_t close = text.find(std::string(3, c), i + 3);
        i = close == std::string_view::npos ? text.size() : close + 3;
        push(TokType::kOther, std::string(text.substr(start, i - start)), start);
        continue;
      }
      if (end == std::string_view::npos) {
        push(TokType::kInvalid, "unterminated string", start);
        i = text.size();
        continue;
      }
      i = end;
      std::string literal = QuoteStringLiteral(content);
      if (i < text.size() && text[i] == '@') {
        size_t j = i + 1;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                   text[j] == '-')) {
          ++j;
        }
        literal += ToLower(text.substr(i, j - i));
        i = j;
      } else if (text.substr(i, 2) == "^^") {
        size_t j = i + 2;
        if (j < text.size() && text[j] == '<') {
          size_t k = j + 1;
          while (k < text.size() && IsIriChar(text[k])) ++k;
          if (k < text.size() && text[k] == '>') {
            literal += std::string(text.substr(i, k + 1 - i));
            i = k + 1;
            push(TokType::kString, literal, start);
            continue;
          }
        }
        while (j < text.size() && (IsNameChar(text[j]) || text[j] == ':')) ++j;
        push(TokType::kOther, std::string(text.substr(start, j - start)), start);
        i = j;
        continue;
      }
      push(TokType::kString, literal, start);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '-' || c == '+') && i + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
      size_t j = i + 1;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j + 1 < text.size() && text[j] == '.' &&
          std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
        size_t k = j + 1;
        while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
        push(TokType::kDecimal, std::string(text.substr(i, k - i)), start);
        i = k;
        continue;
      }
      if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
        while (j < text.size() && !IsSpace(text[j]) && text[j] != ')' &&
               text[j] != '}') {
          ++j;
        }
        push(TokType::kOther, std::string(text.substr(i, j - i)), start);
        i = j;
        continue;
      }
      push(TokType::kInteger, CanonicalInteger(text.substr(i, j - i)), start);
      i = j;
      continue;
    }
    if (IsNameStart(c)) {
      size_t j = i;
      while (j < text.size() && IsNameChar(text[j])) ++j;
      std::string word(text.substr(i, j - i));
      if (j < text.size() && text[j] == ':') {
        // prefixed name
        size_t k = j + 1;
        while (k < text.size() && (IsNameChar(text[k]) || text[k] == '.') &&
               !(text[k] == '.' && (k + 1 >= text.size() || !IsNameChar(text[k + 1])))) {
          ++k;
        }
        push(TokType::kOther, std::string(text.substr(i, k - i)), start);
        i = k;
        continue;
      }
      i = j;
      std::string upper = ToUpper(word);
      if (word == "a") {
        push(TokType::kUri, std::string(kRdfType), start);
      } else if (upper == "TRUE" || upper == "FALSE") {
        push(TokType::kDecimal, ToLower(word), start);
      } else if (Vocabulary::IsKeyword(upper) && upper != "BIND") {
        push(TokType::kKeyword, upper, start);
      } else if (SubsetKeywords().count(upper) ||
                 (i < text.size() && text[i] == '(')) {
        push(TokType::kOther, word, start);
      } else {
        push(TokType::kInvalid, word, start);
      }
      continue;
    }
    if (c == ':') {
      size_t j = i + 1;
      while (j < text.size() && IsNameChar(text[j])) ++j;
      push(TokType::kOther, std::string(text.substr(i, j - i)), start);
      i = j;
      continue;
    }
    if (std::string_view(",;*|/^+-[]&").find(c) != std::string_view::npos) {
      push(TokType::kOther, std::string(1, c), i++);
      continue;
    }
    push(TokType::kInvalid, std::string(1, c), i++);
  }
  tokens.push_back({TokType::kEnd, "", text.size()});
  return tokens;
}

// ---------------------------------------------------------------------------
// Delimiter check, shared by both syntaxes.

template <typename Tokens, typename OpenClose>
std::optional<ParseError> CheckBalance(std::string_view text,
                                       const Tokens& tokens,
                                       OpenClose classify) {
  std::vector<std::pair<char, size_t>> stack;
  for (const auto& tok : tokens) {
    char kind = classify(tok);
    if (kind == '{' || kind == '(') {
      stack.emplace_back(kind, tok.offset);
    } else if (kind == '}' || kind == ')') {
      char want = kind == '}' ? '{' : '(';
      if (stack.empty() || stack.back().first != want) {
        return MakeError(ErrorCode::kUnbalancedDelimiter,
                         std::string("unmatched '") + kind + "'", text,
                         tok.offset);
      }
      stack.pop_back();
    }
  }
  if (!stack.empty()) {
    char open = stack.back().first;
    return MakeError(ErrorCode::kUnbalancedDelimiter,
                     std::string("unclosed '") + open + "' at end of input",
                     text, text.size());
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parser.

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::string_view text,
         const Vocabulary& vocab, bool allow_raw_predicates)
      : tokens_(std::move(tokens)),
        text_(text),
        vocab_(vocab),
        allow_raw_predicates_(allow_raw_predicates) {}

  LogicalForm ParseQuery() {
    LogicalForm form;
    if (PeekKeyword("SELECT")) {
      Next();
      form.kind = LogicalForm::Kind::kSelect;
      if (PeekKeyword("DISTINCT")) {
        Next();
        form.distinct = true;
      }
      while (Peek().type == TokType::kVariable || Peek().type == TokType::kLParen) {
        form.projection.push_back(ParseProjection());
      }
      if (form.projection.empty()) Fail("expected a projection variable", Peek());
      if (PeekKeyword("WHERE")) Next();
      form.where = ParseGroup();
      ParseModifiers(&form);
    } else if (PeekKeyword("ASK")) {
      Next();
      form.kind = LogicalForm::Kind::kAsk;
      if (PeekKeyword("WHERE")) Next();
      form.where = ParseGroup();
    } else {
      Fail("expected SELECT or ASK", Peek());
    }
    if (Peek().type != TokType::kEnd) Fail("unexpected trailing token", Peek());
    CheckInvariants(form);
    return form;
  }

 private:
  const Token& Peek(size_t ahead = 0) const {
    size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }

  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool PeekKeyword(std::string_view kw, size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return t.type == TokType::kKeyword && t.text == kw;
  }

  [[noreturn]] void Fail(const std::string& message, const Token& at,
                         ErrorCode code = ErrorCode::kUnexpectedToken) const {
    std::string found;
    switch (at.type) {
      case TokType::kEnd: found = "end of input"; break;
      case TokType::kOther:
        found = "'" + at.text + "' (outside the supported subset)";
        break;
      default: found = "'" + at.text + "'"; break;
    }
    throw MakeError(code, message + ", found " + found, text_, at.offset);
  }

  void ExpectKeyword(std::string_view kw) {
    if (!PeekKeyword(kw)) Fail("expected " + std::string(kw), Peek());
    Next();
  }

  void Expect(TokType type, std::string_view what) {
    if (Peek().type != type) Fail("expected " + std::string(what), Peek());
    Next();
  }

  std::string ExpectVariable() {
    if (Peek().type != TokType::kVariable) Fail("expected a variable", Peek());
    return Next().text;
  }

  Projection ParseProjection() {
    Projection p;
    if (Peek().type == TokType::kVariable) {
      p.variable = Next().text;
      return p;
    }
    Expect(TokType::kLParen, "'('");
    ExpectKeyword("COUNT");
    Expect(TokType::kLParen, "'('");
    p.is_count = true;
    if (PeekKeyword("DISTINCT")) {
      Next();
      p.count_distinct = true;
    }
    p.count_of = ExpectVariable();
    Expect(TokType::kRParen, "')'");
    ExpectKeyword("AS");
    p.variable = ExpectVariable();
    Expect(TokType::kRParen, "')'");
    return p;
  }

  bool AtTermStart() const {
    switch (Peek().type) {
      case TokType::kVariable:
      case TokType::kMention:
      case TokType::kInteger:
      case TokType::kDecimal:
      case TokType::kString:
      case TokType::kUri:
      case TokType::kPlaceholder:
        return true;
      default:
        return false;
    }
  }

  Term ParseTerm() {
    const Token& t = Peek();
    switch (t.type) {
      case TokType::kVariable: return Term::Variable(Next().text);
      case TokType::kMention: return Term::Mention(Next().text);
      case TokType::kInteger:
      case TokType::kDecimal:
      case TokType::kString: return Term::Literal(Next().text);
      case TokType::kUri: return Term::Uri(Next().text);
      case TokType::kPlaceholder: return Term{Term::Kind::kPlaceholder, Next().text};
      default: Fail("expected a term", t);
    }
  }

  std::string ParseRelation() {
    const Token& t = Peek();
    if (t.type == TokType::kRelation) return Next().text;
    if (t.type == TokType::kUri) {
      if (const std::string* token = vocab_.RelationToken(t.text)) {
        Next();
        return *token;
      }
      if (allow_raw_predicates_) return "<" + Next().text + ">";
      Fail("unknown predicate <" + t.text + ">", t,
           ErrorCode::kUnknownRelationToken);
    }
    Fail("expected a relation", t);
  }

  GroupPattern ParseGroup() {
    Expect(TokType::kLBrace, "'{'");
    GroupPattern group;
    bool previous_triple = false;
    while (Peek().type != TokType::kRBrace) {
      if (Peek().type == TokType::kLBrace) {
        Union u;
        u.branches.push_back(ParseGroup());
        while (PeekKeyword("UNION")) {
          Next();
          u.branches.push_back(ParseGroup());
        }
        group.elements.emplace_back(std::move(u));
        previous_triple = false;
      } else if (PeekKeyword("FILTER")) {
        Next();
        group.elements.emplace_back(ParseFilter());
        previous_triple = false;
      } else if (AtTermStart()) {
        if (previous_triple) Fail("expected <dot> between triple patterns", Peek());
        Triple triple;
        triple.subject = ParseTerm();
        triple.relation = ParseRelation();
        triple.object = ParseTerm();
        group.elements.emplace_back(std::move(triple));
        previous_triple = true;
      } else {
        Fail("expected a triple pattern, FILTER, group or '}'", Peek());
      }
      if (Peek().type == TokType::kDot) {
        Next();
        previous_triple = false;
      }
    }
    Next();
    return group;
  }

  Filter ParseFilter() {
    Filter filter;
    if (PeekKeyword("NOT")) {
      Next();
      ExpectKeyword("EXISTS");
      NotExists ne;
      ne.pattern.push_back(ParseGroup());
      filter.condition = std::move(ne);
      return filter;
    }
    Expect(TokType::kLParen, "'(' after FILTER");
    Comparison cmp;
    cmp.lhs = ParseTerm();
    if (Peek().type != TokType::kOperator) Fail("expected a comparison operator", Peek());
    cmp.op = Next().text;
    cmp.rhs = ParseTerm();
    Expect(TokType::kRParen, "')'");
    filter.condition = std::move(cmp);
    return filter;
  }

  OrderKey ParseOrderKey() {
    OrderKey key;
    if (Peek().type == TokType::kVariable) {
      key.variable = Next().text;
      return key;
    }
    if (PeekKeyword("ASC")) {
      key.direction = OrderKey::Direction::kAsc;
    } else if (PeekKeyword("DESC")) {
      key.direction = OrderKey::Direction::kDesc;
    } else {
      Fail("expected an ORDER BY key", Peek());
    }
    Next();
    Expect(TokType::kLParen, "'('");
    if (PeekKeyword("COUNT")) {
      Next();
      key.is_count = true;
      Expect(TokType::kLParen, "'('");
      if (PeekKeyword("DISTINCT")) {
        Next();
        key.count_distinct = true;
      }
      key.variable = ExpectVariable();
      Expect(TokType::kRParen, "')'");
    } else {
      key.variable = ExpectVariable();
    }
    Expect(TokType::kRParen, "')'");
    return key;
  }

  void ParseModifiers(LogicalForm* form) {
    if (PeekKeyword("GROUP")) {
      Next();
      ExpectKeyword("BY");
      form->group_by.push_back(ExpectVariable());
      while (Peek().type == TokType::kVariable) form->group_by.push_back(Next().text);
    }
    if (PeekKeyword("ORDER")) {
      Next();
      ExpectKeyword("BY");
      form->order_by.push_back(ParseOrderKey());
      while (Peek().type == TokType::kVariable || PeekKeyword("ASC") ||
             PeekKeyword("DESC")) {
        form->order_by.push_back(ParseOrderKey());
      }
    }
    if (PeekKeyword("LIMIT")) {
      Next();
      const Token& t = Peek();
      if (t.type != TokType::kInteger || t.text.front() == '-' || t.text.size() > 15) {
        Fail("expected a non-negative LIMIT count", t);
      }
      form->limit = std::stoll(Next().text);
    }
  }

  static void CollectTripleVariables(const GroupPattern& g,
                                     std::set<std::string>* vars,
                                     size_t* triples) {
    for (const auto& e : g.elements) {
      if (auto* t = std::get_if<Triple>(&e)) {
        ++*triples;
        if (t->subject.kind == Term::Kind::kVariable) vars->insert(t->subject.text);
        if (t->object.kind == Term::Kind::kVariable) vars->insert(t->object.text);
      } else if (auto* u = std::get_if<Union>(&e)) {
        for (const auto& b : u->branches) CollectTripleVariables(b, vars, triples);
      }
    }
  }

  void CheckInvariants(const LogicalForm& form) const {
    std::set<std::string> vars;
    size_t triples = 0;
    CollectTripleVariables(form.where, &vars, &triples);
    const Token& at = tokens_.front();
    if (triples == 0) {
      throw MakeError(ErrorCode::kInvalidForm, "form has no triple patterns",
                      text_, at.offset);
    }
    for (const auto& p : form.projection) {
      const std::string& v = p.is_count ? p.count_of : p.variable;
      if (!vars.count(v)) {
        throw MakeError(ErrorCode::kInvalidForm,
                        "projected variable " + v + " occurs in no pattern",
                        text_, at.offset);
      }
    }
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  std::string_view text_;
  const Vocabulary& vocab_;
  bool allow_raw_predicates_;
};

// ---------------------------------------------------------------------------
// Rendering.

class Renderer {
 public:
  Renderer(RenderStyle style, const Vocabulary& vocab)
      : style_(style), vocab_(vocab) {}

  std::vector<std::string> Render(const LogicalForm& form) {
    if (form.kind == LogicalForm::Kind::kAsk) {
      Emit("ASK");
      RenderGroup(form.where);
      return std::move(out_);
    }
    Emit("SELECT");
    if (form.distinct) Emit("DISTINCT");
    for (const auto& p : form.projection) {
      if (!p.is_count) {
        Emit(p.variable);
        continue;
      }
      Emit("(");
      Emit("COUNT");
      Emit("(");
      if (p.count_distinct) Emit("DISTINCT");
      Emit(p.count_of);
      Emit(")");
      Emit("AS");
      Emit(p.variable);
      Emit(")");
    }
    Emit("WHERE");
    RenderGroup(form.where);
    if (!form.group_by.empty()) {
      Emit("GROUP");
      Emit("BY");
      for (const auto& v : form.group_by) Emit(v);
    }
    if (!form.order_by.empty()) {
      Emit("ORDER");
      Emit("BY");
      for (const auto& k : form.order_by) {
        if (k.direction == OrderKey::Direction::kNone) {
          Emit(k.variable);
          continue;
        }
        Emit(k.direction == OrderKey::Direction::kAsc ? "ASC" : "DESC");
        Emit("(");
        if (k.is_count) {
          Emit("COUNT");
          Emit("(");
          if (k.count_distinct) Emit("DISTINCT");
          Emit(k.variable);
          Emit(")");
        } else {
          Emit(k.variable);
        }
        Emit(")");
      }
    }
    if (form.limit) {
      Emit("LIMIT");
      Emit(std::to_string(*form.limit));
    }
    return std::move(out_);
  }

 private:
  void Emit(std::string token) { out_.push_back(std::move(token)); }

  void EmitTerm(const Term& t) {
    if (t.kind == Term::Kind::kUri) {
      Emit("<" + t.text + ">");
    } else {
      Emit(t.text);
    }
  }

  void RenderGroup(const GroupPattern& g) {
    Emit("{");
    for (size_t i = 0; i < g.elements.size(); ++i) {
      const Element& e = g.elements[i];
      if (auto* t = std::get_if<Triple>(&e)) {
        EmitTerm(t->subject);
        if (style_ == RenderStyle::kSparql) {
          const std::string* uri = vocab_.PredicateUri(t->relation);
          Emit(uri ? "<" + *uri + ">" : t->relation);
        } else {
          Emit(t->relation);
        }
        EmitTerm(t->object);
        if (i + 1 < g.elements.size() &&
            std::holds_alternative<Triple>(g.elements[i + 1])) {
          Emit(style_ == RenderStyle::kSparql ? "." : "<dot>");
        }
      } else if (auto* f = std::get_if<Filter>(&e)) {
        Emit("FILTER");
        if (auto* c = std::get_if<Comparison>(&f->condition)) {
          Emit("(");
          EmitTerm(c->lhs);
          if (style_ == RenderStyle::kSparql) {
            auto sym = Vocabulary::OperatorSymbol(c->op);
            Emit(sym ? std::string(*sym) : c->op);
          } else {
            Emit(c->op);
          }
          EmitTerm(c->rhs);
          Emit(")");
        } else {
          const auto& ne = std::get<NotExists>(f->condition);
          Emit("NOT");
          Emit("EXISTS");
          for (const auto& p : ne.pattern) RenderGroup(p);
        }
      } else {
        const auto& u = std::get<Union>(e);
        for (size_t b = 0; b < u.branches.size(); ++b) {
          if (b > 0) Emit("UNION");
          RenderGroup(u.branches[b]);
        }
      }
    }
    Emit("}");
  }

  RenderStyle style_;
  const Vocabulary& vocab_;
  std::vector<std::string> out_;
};

// ---------------------------------------------------------------------------
// Term walkers in rendering order.

template <typename Group, typename Fn>
void WalkGroupTerms(Group& g, Fn&& fn) {
  for (auto& e : g.elements) {
    if (auto* t = std::get_if<Triple>(&e)) {
      fn(t->subject);
      fn(t->object);
    } else if (auto* f = std::get_if<Filter>(&e)) {
      if (auto* c = std::get_if<Comparison>(&f->condition)) {
        fn(c->lhs);
        fn(c->rhs);
      } else {
        for (auto& p : std::get<NotExists>(f->condition).pattern) WalkGroupTerms(p, fn);
      }
    } else {
      for (auto& b : std::get<Union>(e).branches) WalkGroupTerms(b, fn);
    }
  }
}

// Calls fn(std::string&) on each variable occurrence in rendering order.
template <typename Fn>
void WalkVariables(LogicalForm& form, Fn&& fn) {
  for (auto& p : form.projection) {
    if (p.is_count) fn(p.count_of);
    fn(p.variable);
  }
  WalkGroupTerms(form.where, [&](Term& t) {
    if (t.kind == Term::Kind::kVariable) fn(t.text);
  });
  for (auto& v : form.group_by) fn(v);
  for (auto& k : form.order_by) fn(k.variable);
}

// A triple slot or a comparison side, in rendering order.
struct SlotRecord {
  const Term* term;
  size_t pattern_index;
  MentionPosition::Slot slot;
  std::string relation;      // triple slots
  const Term* other = nullptr;  // comparison sides
};

void CollectSlots(const GroupPattern& g, std::vector<SlotRecord>* out,
                  size_t* counter) {
  for (const auto& e : g.elements) {
    if (auto* t = std::get_if<Triple>(&e)) {
      size_t idx = (*counter)++;
      out->push_back({&t->subject, idx, MentionPosition::Slot::kSubject, t->relation});
      out->push_back({&t->object, idx, MentionPosition::Slot::kObject, t->relation});
    } else if (auto* f = std::get_if<Filter>(&e)) {
      if (auto* c = std::get_if<Comparison>(&f->condition)) {
        size_t idx = (*counter)++;
        out->push_back({&c->lhs, idx, MentionPosition::Slot::kFilterLeft, "", &c->rhs});
        out->push_back({&c->rhs, idx, MentionPosition::Slot::kFilterRight, "", &c->lhs});
      } else {
        for (const auto& p : std::get<NotExists>(f->condition).pattern) {
          CollectSlots(p, out, counter);
        }
      }
    } else {
      for (const auto& b : std::get<Union>(e).branches) CollectSlots(b, out, counter);
    }
  }
}

using Votes = std::map<EntityKind, int>;

std::optional<EntityKind> TripleSlotKind(const std::string& relation,
                                         MentionPosition::Slot slot) {
  auto kinds = RelationSlotKinds(relation);
  if (!kinds) return std::nullopt;
  return slot == MentionPosition::Slot::kSubject ? kinds->first : kinds->second;
}

EntityKind Majority(const Votes& votes) {
  int best = 0;
  for (const auto& [kind, n] : votes) best = std::max(best, n);
  if (best == 0) return EntityKind::kUnknown;
  auto pub = votes.find(EntityKind::kPublication);
  if (pub != votes.end() && pub->second == best) return EntityKind::kPublication;
  for (const auto& [kind, n] : votes) {
    if (n == best) return kind;
  }
  return EntityKind::kUnknown;
}

EntityKind LexicalLiteralKind(const std::string& text) {
  if (IsStringLiteral(text)) return EntityKind::kLiteralString;
  if (IsIntegerLiteral(text) && text.size() == 4) return EntityKind::kLiteralYear;
  return EntityKind::kLiteralNumber;
}

std::string SurfaceOf(const Term& t) {
  switch (t.kind) {
    case Term::Kind::kMention: {
      std::string s = t.text;
      std::replace(s.begin(), s.end(), '_', ' ');
      return s;
    }
    case Term::Kind::kLiteral:
      return IsStringLiteral(t.text) ? StringLiteralContent(t.text) : t.text;
    default:
      return t.text;
  }
}

using TermKey = std::pair<Term::Kind, std::string>;

std::vector<EntityMention> BuildMentions(
    const std::vector<SlotRecord>& slots,
    const std::map<std::string, Votes>& variable_votes) {
  std::vector<EntityMention> mentions;
  std::vector<Votes> votes;
  std::map<TermKey, size_t> index;
  for (const auto& s : slots) {
    if (!s.term->IsBindable()) continue;
    TermKey key{s.term->kind, s.term->text};
    auto [it, inserted] = index.emplace(key, mentions.size());
    if (inserted) {
      EntityMention m;
      m.term = *s.term;
      m.surface = SurfaceOf(*s.term);
      m.occurrence_index = static_cast<int>(mentions.size()) + 1;
      mentions.push_back(std::move(m));
      votes.emplace_back();
    }
    EntityMention& m = mentions[it->second];
    m.positions.push_back({s.pattern_index, s.slot});
    std::optional<EntityKind> vote;
    if (!s.relation.empty()) {
      vote = TripleSlotKind(s.relation, s.slot);
    } else if (s.other && s.other->kind == Term::Kind::kVariable) {
      auto vv = variable_votes.find(s.other->text);
      if (vv != variable_votes.end()) {
        EntityKind k = Majority(vv->second);
        if (k != EntityKind::kUnknown) vote = k;
      }
    }
    if (vote) ++votes[it->second][*vote];
  }
  for (size_t i = 0; i < mentions.size(); ++i) {
    EntityKind kind = Majority(votes[i]);
    if (mentions[i].term.kind == Term::Kind::kLiteral && !IsLiteralKind(kind)) {
      kind = LexicalLiteralKind(mentions[i].term.text);
    }
    mentions[i].inferred_kind = kind;
  }
  return mentions;
}

std::map<std::string, Votes> VariableVotes(const std::vector<SlotRecord>& slots) {
  std::map<std::string, Votes> out;
  for (const auto& s : slots) {
    if (s.term->kind != Term::Kind::kVariable || s.relation.empty()) continue;
    if (auto k = TripleSlotKind(s.relation, s.slot)) ++out[s.term->text][*k];
  }
  return out;
}

// Raw-token classification for malformed output.
enum class RawClass { kStructural, kRelation, kOperator, kVariable, kBindable, kOther };

RawClass ClassifyRaw(const std::string& t, const Vocabulary& vocab) {
  if (Vocabulary::IsKeyword(t) || Vocabulary::IsStructural(t)) return RawClass::kStructural;
  if (Vocabulary::IsOperator(t)) return RawClass::kOperator;
  if (vocab.IsRelation(t)) return RawClass::kRelation;
  if (IsPlaceholderToken(t)) return RawClass::kOther;
  if (t.size() > 1 && t.front() == '?') return RawClass::kVariable;
  if (t.size() >= 2 && t.front() == '<' && t.back() == '>') {
    return IsAbsoluteUri(t.substr(1, t.size() - 2)) ? RawClass::kBindable
                                                     : RawClass::kOther;
  }
  return RawClass::kBindable;
}

Term RawTerm(const std::string& t) {
  if (IsIntegerLiteral(t)) return Term::Literal(t);
  if (!t.empty() && t.front() == '"') {
    std::string canonical;
    if (CanonicalStringLiteral(t, &canonical)) return Term::Literal(canonical);
  }
  if (t.size() >= 2 && t.front() == '<') return Term::Uri(t.substr(1, t.size() - 2));
  return Term::Mention(t);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public API.

LogicalForm ParseLogicalForm(std::string_view text, const Vocabulary& vocab) {
  auto raw = SplitLogicalForm(text);
  if (raw.empty()) {
    throw MakeError(ErrorCode::kEmptyInput, "empty logical form", text, 0);
  }
  if (auto err = CheckDelimiters(text, RenderStyle::kLogicalForm)) throw *err;
  Parser parser(LexLogicalForm(text, vocab), text, vocab,
                /*allow_raw_predicates=*/false);
  return parser.ParseQuery();
}

LogicalForm ParseSparql(std::string_view text, const Vocabulary& vocab,
                        SparqlReadOptions options) {
  auto tokens = LexSparql(text);
  if (tokens.size() == 1) {
    throw MakeError(ErrorCode::kEmptyInput, "empty query", text, 0);
  }
  if (auto err = CheckDelimiters(text, RenderStyle::kSparql)) throw *err;
  Parser parser(std::move(tokens), text, vocab, options.allow_raw_predicates);
  return parser.ParseQuery();
}

std::vector<std::string> RenderTokens(const LogicalForm& form, RenderStyle style,
                                      const Vocabulary& vocab) {
  return Renderer(style, vocab).Render(form);
}

std::string Serialize(const LogicalForm& form, const Vocabulary& vocab) {
  std::string out;
  for (const auto& t : RenderTokens(form, RenderStyle::kLogicalForm, vocab)) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::vector<std::string> TokenizeLogicalForm(std::string_view text) {
  std::vector<std::string> out;
  for (auto& raw : SplitLogicalForm(text)) out.push_back(std::move(raw.text));
  return out;
}

std::optional<ParseError> CheckDelimiters(std::string_view text,
                                          RenderStyle style) {
  if (style == RenderStyle::kLogicalForm) {
    auto raw = SplitLogicalForm(text);
    return CheckBalance(text, raw, [](const RawToken& t) -> char {
      return t.text.size() == 1 ? t.text[0] : '\0';
    });
  }
  auto tokens = LexSparql(text);
  return CheckBalance(text, tokens, [](const Token& t) -> char {
    switch (t.type) {
      case TokType::kLBrace: return '{';
      case TokType::kRBrace: return '}';
      case TokType::kLParen: return '(';
      case TokType::kRParen: return ')';
      default: return '\0';
    }
  });
}

std::vector<SubsetViolation> FindSubsetViolations(std::string_view sparql) {
  std::vector<SubsetViolation> out;
  for (const auto& t : LexSparql(sparql)) {
    if (t.type != TokType::kOther) continue;
    auto [line, column] = LineColumn(sparql, t.offset);
    out.push_back({t.text, t.offset, line, column});
  }
  return out;
}

bool IsReservedVariable(std::string_view name) {
  return name == "?answer" || name == "?firstanswer" ||
         name == "?secondanswer" || name == "?count";
}

LogicalForm CanonicalizeVariables(const LogicalForm& form) {
  LogicalForm out = form;
  std::map<std::string, std::string> renamed;
  WalkVariables(out, [&](std::string& v) {
    if (IsReservedVariable(v)) return;
    auto it = renamed.find(v);
    if (it == renamed.end()) {
      it = renamed.emplace(v, "?v" + std::to_string(renamed.size() + 1)).first;
    }
    v = it->second;
  });
  return out;
}

std::vector<std::string> CanonicalizeVariableTokens(
    const std::vector<std::string>& tokens) {
  std::vector<std::string> out = tokens;
  std::map<std::string, std::string> renamed;
  for (auto& t : out) {
    if (t.size() < 2 || t.front() != '?' || IsReservedVariable(t)) continue;
    auto it = renamed.find(t);
    if (it == renamed.end()) {
      it = renamed.emplace(t, "?v" + std::to_string(renamed.size() + 1)).first;
    }
    t = it->second;
  }
  return out;
}

std::vector<const Term*> CollectTerms(const LogicalForm& form) {
  std::vector<const Term*> out;
  WalkGroupTerms(form.where, [&](const Term& t) { out.push_back(&t); });
  return out;
}

std::string_view EntityKindName(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPublication: return "publication";
    case EntityKind::kPerson: return "person";
    case EntityKind::kVenue: return "venue";
    case EntityKind::kLiteralYear: return "literal-year";
    case EntityKind::kLiteralString: return "literal-string";
    case EntityKind::kLiteralNumber: return "literal-number";
    case EntityKind::kUnknown: return "unknown";
  }
  return "unknown";
}

std::optional<EntityKind> ParseEntityKind(std::string_view name) {
  for (EntityKind k :
       {EntityKind::kPublication, EntityKind::kPerson, EntityKind::kVenue,
        EntityKind::kLiteralYear, EntityKind::kLiteralString,
        EntityKind::kLiteralNumber, EntityKind::kUnknown}) {
    if (EntityKindName(k) == name) return k;
  }
  return std::nullopt;
}

bool IsLiteralKind(EntityKind kind) {
  return kind == EntityKind::kLiteralYear ||
         kind == EntityKind::kLiteralString ||
         kind == EntityKind::kLiteralNumber;
}

std::optional<std::pair<EntityKind, EntityKind>> RelationSlotKinds(
    std::string_view relation) {
  using K = EntityKind;
  struct Row {
    std::string_view relation;
    K subject;
    K object;
  };
  // publishedIn holds the venue name as a string literal in the KG.
  static constexpr std::array<Row, 8> kTable = {{
      {"<authoredBy>", K::kPublication, K::kPerson},
      {"<editedBy>", K::kPublication, K::kPerson},
      {"<publishedIn>", K::kPublication, K::kLiteralString},
      {"<yearOfPublication>", K::kPublication, K::kLiteralYear},
      {"<primaryAffiliation>", K::kPerson, K::kLiteralString},
      {"<title>", K::kPublication, K::kLiteralString},
      {"<numberOfCreators>", K::kPublication, K::kLiteralNumber},
      {"<primaryFullCreatorName>", K::kPerson, K::kLiteralString},
  }};
  for (const auto& row : kTable) {
    if (row.relation == relation) return std::make_pair(row.subject, row.object);
  }
  return std::nullopt;
}

std::vector<EntityMention> ExtractMentions(const LogicalForm& form) {
  std::vector<SlotRecord> slots;
  size_t counter = 0;
  CollectSlots(form.where, &slots, &counter);
  return BuildMentions(slots, VariableVotes(slots));
}

std::pair<TemplateForm, std::vector<EntityMention>> MaskEntities(
    const LogicalForm& form) {
  auto mentions = ExtractMentions(form);
  std::map<TermKey, int> index;
  for (const auto& m : mentions) {
    index[{m.term.kind, m.term.text}] = m.occurrence_index;
  }
  TemplateForm masked = form;
  WalkGroupTerms(masked.where, [&](Term& t) {
    if (!t.IsBindable()) return;
    t = Term::Placeholder(index.at({t.kind, t.text}));
  });
  return {std::move(masked), std::move(mentions)};
}

std::vector<EntityMention> ExtractMentionsFromTokens(
    const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  // Storage for the synthetic terms the slot records point at.
  std::vector<Term> terms;
  terms.reserve(tokens.size());
  for (const auto& t : tokens) terms.push_back(RawTerm(t));

  std::vector<SlotRecord> slots;
  size_t relations_seen = 0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    RawClass cls = ClassifyRaw(tokens[i], vocab);
    if (cls == RawClass::kRelation) ++relations_seen;
    if (cls != RawClass::kBindable && cls != RawClass::kVariable) continue;
    if (cls == RawClass::kVariable) terms[i] = Term::Variable(tokens[i]);
    size_t pattern = relations_seen;
    if (i + 1 < tokens.size() && ClassifyRaw(tokens[i + 1], vocab) == RawClass::kRelation) {
      slots.push_back({&terms[i], pattern, MentionPosition::Slot::kSubject, tokens[i + 1]});
    } else if (i > 0 && ClassifyRaw(tokens[i - 1], vocab) == RawClass::kRelation) {
      slots.push_back({&terms[i], pattern > 0 ? pattern - 1 : 0,
                       MentionPosition::Slot::kObject, tokens[i - 1]});
    } else if (i + 2 < tokens.size() &&
               ClassifyRaw(tokens[i + 1], vocab) == RawClass::kOperator) {
      slots.push_back({&terms[i], pattern, MentionPosition::Slot::kFilterLeft, "",
                       &terms[i + 2]});
    } else if (i >= 2 && ClassifyRaw(tokens[i - 1], vocab) == RawClass::kOperator) {
      slots.push_back({&terms[i], pattern, MentionPosition::Slot::kFilterRight, "",
                       &terms[i - 2]});
    } else if (cls == RawClass::kBindable) {
      slots.push_back({&terms[i], pattern, MentionPosition::Slot::kSubject, ""});
    }
  }
  // Filter sides point at neighbours that may have been reclassified above.
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (ClassifyRaw(tokens[i], vocab) == RawClass::kVariable) {
      terms[i] = Term::Variable(tokens[i]);
    }
  }
  return BuildMentions(slots, VariableVotes(slots));
}

std::vector<std::string> MaskTokens(const std::vector<std::string>& tokens,
                                    const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  std::map<TermKey, int> index;
  for (const auto& t : tokens) {
    if (ClassifyRaw(t, vocab) != RawClass::kBindable) {
      out.push_back(t);
      continue;
    }
    Term term = RawTerm(t);
    auto it = index.emplace(TermKey{term.kind, term.text},
                            static_cast<int>(index.size()) + 1).first;
    out.push_back(PlaceholderToken(it->second));
  }
  return out;
}

std::string MentionTokenFromSurface(std::string_view surface) {
  std::string out;
  bool pending = false;
  for (char c : surface) {
    if (IsSpace(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back('_');
    pending = false;
    out.push_back(c);
  }
  return out;
}

bool IsIntegerLiteral(std::string_view text) {
  if (!text.empty() && text.front() == '-') text.remove_prefix(1);
  return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

bool IsStringLiteral(std::string_view text) {
  if (text.size() < 2 || text.front() != '"') return false;
  std::string ignored;
  return ScanQuoted(text, 0, &ignored) != std::string_view::npos;
}

std::string StringLiteralContent(std::string_view text) {
  std::string content;
  if (!text.empty() && (text.front() == '"' || text.front() == '\'')) {
    ScanQuoted(text, 0, &content);
  }
  return content;
}

std::string QuoteStringLiteral(std::string_view content) {
  std::string out = "\"";
  for (char c : content) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c); break;
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace dblpqa
