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


// JSON HTTP API over a SessionManager.
//
//   POST /api/sessions                            {"question": ...}
//   GET  /api/sessions/{id}
//   POST /api/sessions/{id}/entity-selection      {"mention_index", "candidate_index"}
//   POST /api/sessions/{id}/template-selection    {"template_index"}
//   POST /api/sessions/{id}/query                 {"sparql": ...}
//   POST /api/sessions/{id}/regenerate
//   GET  /api/examples
//
// Every session response is the full state JSON; failures are
// {"error": {"code", "message"}}.

#ifndef DBLPQA_SERVER_H_
#define DBLPQA_SERVER_H_

#include <memory>

#include "dblpqa/session.h"

namespace httplib {
class Server;
}

namespace dblpqa {

// HTTP status for an error code raised by a request.
int HttpStatusFor(ErrorCode code);

void RegisterRoutes(httplib::Server& server, std::shared_ptr<SessionManager> sessions,
                    const Vocabulary& vocab);

}  // namespace dblpqa

#endif  // DBLPQA_SERVER_H_
