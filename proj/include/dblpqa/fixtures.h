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

#ifndef DBLPQA_FIXTURES_H_
#define DBLPQA_FIXTURES_H_

#include <array>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dblpqa/http.h"

namespace dblpqa {

enum class FixtureMode { kOff, kRecord, kReplay };

std::string_view FixtureModeName(FixtureMode mode);
// "off" | "record" | "replay"; throws Error(ConfigError) otherwise.
FixtureMode ParseFixtureMode(std::string_view name);

// One recorded exchange, stored as <dir>/<key>.json:
//   {"request": {...}, "status": 200, "content_type": "...", "body": "..."}
struct FixtureRecord {
  nlohmann::json request;
  int status = 0;
  std::string content_type;
  std::string body;
};

// Record/replay layer in front of live HTTP calls. Keys are chosen by the
// caller so whitespace-variant requests can share a recording.
class FixtureStore {
 public:
  FixtureStore() = default;
  FixtureStore(FixtureMode mode, std::filesystem::path dir);

  FixtureMode mode() const { return mode_; }
  const std::filesystem::path& dir() const { return dir_; }

  // Off: live(). Record: live(), then persist the response. Replay: the
  // stored response or Error(FixtureMiss).
  HttpResponse Fetch(std::string_view key, const nlohmann::json& request,
                     const std::function<HttpResponse()>& live) const;

  std::optional<FixtureRecord> Load(std::string_view key) const;
  void Save(std::string_view key, const FixtureRecord& record) const;

  // Hex SHA-256 prefix over the parts, separated by an unambiguous byte.
  static std::string Key(const std::vector<std::string_view>& parts);

 private:
  std::filesystem::path PathFor(std::string_view key) const;
  std::mutex& LockFor(std::string_view key) const;

  FixtureMode mode_ = FixtureMode::kOff;
  std::filesystem::path dir_;
  mutable std::array<std::mutex, 16> write_locks_;
};

}  // namespace dblpqa

#endif  // DBLPQA_FIXTURES_H_
