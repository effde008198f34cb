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

#ifndef DBLPQA_HTTP_H_
#define DBLPQA_HTTP_H_

#include <chrono>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dblpqa {

struct HttpRequest {
  std::string method = "GET";
  std::string url;  // absolute, without query string
  // GET: appended as the query string. POST without body: form-encoded.
  std::vector<std::pair<std::string, std::string>> params;
  std::map<std::string, std::string> headers;
  std::string body;
  std::string content_type;
  std::chrono::milliseconds timeout{10000};
};

struct HttpResponse {
  int status = 0;
  std::string body;
  std::string content_type;
};

// The request never produced a response.
class TransportError : public std::runtime_error {
 public:
  enum class Kind { kUnavailable, kTimeout };

  TransportError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class HttpClient {
 public:
  virtual ~HttpClient() = default;

  // Throws TransportError; any HTTP status is a response.
  virtual HttpResponse Send(const HttpRequest& request) = 0;
};

// cpp-httplib backed client, http and https.
std::shared_ptr<HttpClient> MakeHttpClient();

struct UrlParts {
  std::string scheme_host_port;  // "https://dblp.org:443"
  std::string path;              // "/search/publ/api"
};

// Throws std::invalid_argument on anything but http(s)://host[:port][/path].
UrlParts SplitUrl(const std::string& url);

}  // namespace dblpqa

#endif  // DBLPQA_HTTP_H_
