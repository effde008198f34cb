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


#include "dblpqa/server.h"

#include <functional>

#include <httplib.h>
#include <json.hpp>

namespace dblpqa {

namespace {

using json = nlohmann::json;

constexpr char kJson[] = "application/json";

json ParseBody(const httplib::Request& req, bool required) {
  if (req.body.empty()) {
    if (required) throw Error(ErrorCode::kBadRequest, "request body is required");
    return json::object();
  }
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::kBadRequest, "request body must be a JSON object");
  }
  return body;
}

template <typename T>
T Field(const json& body, const char* key) {
  if (!body.contains(key)) {
    throw Error(ErrorCode::kBadRequest, std::string("missing field \"") + key + "\"");
  }
  try {
    return body.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kBadRequest, std::string("field \"") + key + "\" has the wrong type");
  }
}

using Handler = std::function<json(const httplib::Request&, int* status)>;

httplib::Server::Handler Wrap(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    int status = 200;
    json out;
    try {
      out = handler(req, &status);
    } catch (const Error& e) {
      status = HttpStatusFor(e.code());
      out = ErrorJson(e);
    } catch (const std::exception& e) {
      status = 500;
      out = ErrorJson(Error(ErrorCode::kInternal, e.what()));
    }
    res.status = status;
    res.set_content(out.dump(), kJson);
  };
}

}  // namespace

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession: return 404;
    case ErrorCode::kIndexOutOfRange:
    case ErrorCode::kBadRequest:
    case ErrorCode::kEmptyQuestion:
    case ErrorCode::kEmptyInput:
      return 400;
    default:
      return 500;
  }
}

void RegisterRoutes(httplib::Server& server, std::shared_ptr<SessionManager> sessions,
                    const Vocabulary& vocab) {
  auto state = [sessions, vocab](const SessionState& s) { return ToJson(s, vocab); };

  server.Post("/api/sessions", Wrap([=](const httplib::Request& req, int* status) {
                json body = ParseBody(req, true);
                auto s = sessions->Create(Field<std::string>(body, "question"));
                *status = 201;
                return state(s);
              }));
  server.Get(R"(/api/sessions/([A-Za-z0-9]+))",
             Wrap([=](const httplib::Request& req, int*) {
               return state(sessions->Get(req.matches[1]));
             }));
  server.Post(R"(/api/sessions/([A-Za-z0-9]+)/entity-selection)",
              Wrap([=](const httplib::Request& req, int*) {
                json body = ParseBody(req, true);
                return state(sessions->SelectEntity(req.matches[1],
                                                    Field<int>(body, "mention_index"),
                                                    Field<int>(body, "candidate_index")));
              }));
  server.Post(R"(/api/sessions/([A-Za-z0-9]+)/template-selection)",
              Wrap([=](const httplib::Request& req, int*) {
                json body = ParseBody(req, true);
                return state(
                    sessions->SelectTemplate(req.matches[1], Field<int>(body, "template_index")));
              }));
  server.Post(R"(/api/sessions/([A-Za-z0-9]+)/query)",
              Wrap([=](const httplib::Request& req, int*) {
                json body = ParseBody(req, true);
                return state(sessions->RunQuery(req.matches[1], Field<std::string>(body, "sparql")));
              }));
  server.Post(R"(/api/sessions/([A-Za-z0-9]+)/regenerate)",
              Wrap([=](const httplib::Request& req, int*) {
                return state(sessions->Regenerate(req.matches[1]));
              }));
  server.Get("/api/examples", Wrap([=](const httplib::Request&, int*) {
               json list = json::array();
               for (const auto& e : sessions->Examples()) {
                 list.push_back({{"text", e.text}, {"note", e.note}});
               }
               return json{{"examples", list}};
             }));
}

}  // namespace dblpqa
