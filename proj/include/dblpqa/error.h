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

#ifndef DBLPQA_ERROR_H_
#define DBLPQA_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dblpqa {

// Every failure the library reports carries one of these codes. The session
// layer records them per stage and the HTTP API exposes them by name.
enum class ErrorCode {
  // logical-form
  kEmptyInput,
  kUnbalancedDelimiter,
  kUnknownRelationToken,
  kUnexpectedToken,
  kInvalidForm,
  // translator
  kEmptyQuestion,
  kNoPatternMatched,
  kMalformedModelOutput,
  kPatternFileError,
  // shared by the model endpoint and the SPARQL endpoint
  kEndpointUnavailable,
  kEndpointTimeout,
  // entity-linker
  kSearchApiUnavailable,
  kSearchApiMalformedResponse,
  kFixtureMiss,
  kNotALiteralKind,
  kMalformedYear,
  kUnsupportedKind,
  // template-base
  kEmptyTemplateBase,
  // query-builder
  kUnboundPlaceholder,
  kArityMismatch,
  kParseFailure,
  // sparql-client
  kQueryRejected,
  kMalformedResults,
  // session
  kUnknownSession,
  kIndexOutOfRange,
  kBadRequest,
  // evalharness and configuration
  kFileUnreadable,
  kSchemaMismatch,
  kConfigError,
  // anything not raised as an Error
  kInternal,
};

// Stable name used in JSON payloads ("UnboundPlaceholder", ...).
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  std::string_view name() const { return ErrorCodeName(code_); }

 private:
  ErrorCode code_;
};

// Syntax error in a logical form or SPARQL text, with a source position.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& message, size_t offset,
             size_t line, size_t column)
      : Error(code, message), offset_(offset), line_(line), column_(column) {}

  size_t offset() const { return offset_; }
  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t offset_;
  size_t line_;
  size_t column_;
};

}  // namespace dblpqa

#endif  // DBLPQA_ERROR_H_
