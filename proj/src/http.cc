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

#include "dblpqa/http.h"

#include <httplib.h>

namespace dblpqa {

UrlParts SplitUrl(const std::string& url) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("not an absolute URL: " + url);
  }
  std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw std::invalid_argument("unsupported scheme in " + url);
  }
  size_t path_start = url.find('/', scheme_end + 3);
  UrlParts parts;
  if (path_start == std::string::npos) {
    parts.scheme_host_port = url;
    parts.path = "/";
  } else {
    parts.scheme_host_port = url.substr(0, path_start);
    parts.path = url.substr(path_start);
  }
  if (parts.scheme_host_port.size() <= scheme_end + 3) {
    throw std::invalid_argument("missing host in " + url);
  }
  return parts;
}

namespace {

class HttplibClient : public HttpClient {
 public:
  HttpResponse Send(const HttpRequest& request) override {
    UrlParts parts;
    try {
      parts = SplitUrl(request.url);
    } catch (const std::invalid_argument& e) {
      throw TransportError(TransportError::Kind::kUnavailable, e.what());
    }
    httplib::Client client(parts.scheme_host_port);
    auto seconds = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
        request.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    client.set_follow_location(true);

    httplib::Headers headers(request.headers.begin(), request.headers.end());
    httplib::Params params(request.params.begin(), request.params.end());
    httplib::Result result;
    if (request.method == "GET") {
      result = client.Get(parts.path, params, headers);
    } else if (request.method == "POST" && request.body.empty()) {
      result = client.Post(parts.path, headers, params);
    } else if (request.method == "POST") {
      std::string path = parts.path;
      if (!params.empty()) {
        path = httplib::append_query_params(path, params);
      }
      result = client.Post(path, headers, request.body,
                           request.content_type.empty()
                               ? "application/octet-stream"
                               : request.content_type);
    } else {
      throw TransportError(TransportError::Kind::kUnavailable,
                           "unsupported method " + request.method);
    }
    if (!result) {
      httplib::Error err = result.error();
      auto kind = err == httplib::Error::ConnectionTimeout ||
                          err == httplib::Error::Read
                      ? TransportError::Kind::kTimeout
                      : TransportError::Kind::kUnavailable;
      throw TransportError(kind, request.url + ": " + httplib::to_string(err));
    }
    HttpResponse response;
    response.status = result->status;
    response.body = result->body;
    response.content_type = result->get_header_value("Content-Type");
    return response;
  }
};

}  // namespace

std::shared_ptr<HttpClient> MakeHttpClient() {
  return std::make_shared<HttplibClient>();
}

}  // namespace dblpqa
