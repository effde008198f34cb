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

#include "dblpqa/error.h"

namespace dblpqa {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kUnbalancedDelimiter: return "UnbalancedDelimiter";
    case ErrorCode::kUnknownRelationToken: return "UnknownRelationToken";
    case ErrorCode::kUnexpectedToken: return "UnexpectedToken";
    case ErrorCode::kInvalidForm: return "InvalidForm";
    case ErrorCode::kEmptyQuestion: return "EmptyQuestion";
    case ErrorCode::kNoPatternMatched: return "NoPatternMatched";
    case ErrorCode::kMalformedModelOutput: return "MalformedModelOutput";
    case ErrorCode::kPatternFileError: return "PatternFileError";
    case ErrorCode::kEndpointUnavailable: return "EndpointUnavailable";
    case ErrorCode::kEndpointTimeout: return "EndpointTimeout";
    case ErrorCode::kSearchApiUnavailable: return "SearchApiUnavailable";
    case ErrorCode::kSearchApiMalformedResponse:
      return "SearchApiMalformedResponse";
    case ErrorCode::kFixtureMiss: return "FixtureMiss";
    case ErrorCode::kNotALiteralKind: return "NotALiteralKind";
    case ErrorCode::kMalformedYear: return "MalformedYear";
    case ErrorCode::kUnsupportedKind: return "UnsupportedKind";
    case ErrorCode::kEmptyTemplateBase: return "EmptyTemplateBase";
    case ErrorCode::kUnboundPlaceholder: return "UnboundPlaceholder";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kParseFailure: return "ParseFailure";
    case ErrorCode::kQueryRejected: return "QueryRejected";
    case ErrorCode::kMalformedResults: return "MalformedResults";
    case ErrorCode::kUnknownSession: return "UnknownSession";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kBadRequest: return "BadRequest";
    case ErrorCode::kFileUnreadable: return "FileUnreadable";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace dblpqa
