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

#include "dblpqa/fixtures.h"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "dblpqa/error.h"

namespace dblpqa {

std::string_view FixtureModeName(FixtureMode mode) {
  switch (mode) {
    case FixtureMode::kOff: return "off";
    case FixtureMode::kRecord: return "record";
    case FixtureMode::kReplay: return "replay";
  }
  return "off";
}

FixtureMode ParseFixtureMode(std::string_view name) {
  if (name == "off" || name.empty()) return FixtureMode::kOff;
  if (name == "record") return FixtureMode::kRecord;
  if (name == "replay") return FixtureMode::kReplay;
  throw Error(ErrorCode::kConfigError,
              "unknown fixture mode '" + std::string(name) + "'");
}

FixtureStore::FixtureStore(FixtureMode mode, std::filesystem::path dir)
    : mode_(mode), dir_(std::move(dir)) {
  if (mode_ != FixtureMode::kOff && dir_.empty()) {
    throw Error(ErrorCode::kConfigError,
                "fixture_dir is required when fixture_mode is not off");
  }
}

std::string FixtureStore::Key(const std::vector<std::string_view>& parts) {
  std::string joined;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) joined.push_back('\x1f');
    joined.append(parts[i]);
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(joined.data(), joined.size(), digest, &length, EVP_sha256(),
             nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < 16 && i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

std::filesystem::path FixtureStore::PathFor(std::string_view key) const {
  return dir_ / (std::string(key) + ".json");
}

std::mutex& FixtureStore::LockFor(std::string_view key) const {
  return write_locks_[std::hash<std::string_view>{}(key) % write_locks_.size()];
}

std::optional<FixtureRecord> FixtureStore::Load(std::string_view key) const {
  std::ifstream in(PathFor(key));
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  auto doc = nlohmann::json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("body")) {
    throw Error(ErrorCode::kFixtureMiss,
                "unreadable fixture " + PathFor(key).string());
  }
  FixtureRecord record;
  record.request = doc.value("request", nlohmann::json::object());
  record.status = doc.value("status", 200);
  record.content_type = doc.value("content_type", "");
  record.body = doc.at("body").get<std::string>();
  return record;
}

void FixtureStore::Save(std::string_view key, const FixtureRecord& record) const {
  std::lock_guard<std::mutex> lock(LockFor(key));
  std::filesystem::create_directories(dir_);
  nlohmann::json doc = {{"request", record.request},
                        {"status", record.status},
                        {"content_type", record.content_type},
                        {"body", record.body}};
  auto path = PathFor(key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << doc.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

HttpResponse FixtureStore::Fetch(
    std::string_view key, const nlohmann::json& request,
    const std::function<HttpResponse()>& live) const {
  switch (mode_) {
    case FixtureMode::kOff:
      return live();
    case FixtureMode::kRecord: {
      HttpResponse response = live();
      Save(key, {request, response.status, response.content_type, response.body});
      return response;
    }
    case FixtureMode::kReplay: {
      auto record = Load(key);
      if (!record) {
        throw Error(ErrorCode::kFixtureMiss,
                    "no recorded response " + std::string(key) + " for " +
                        request.dump());
      }
      return {record->status, record->body, record->content_type};
    }
  }
  return live();
}

}  // namespace dblpqa
