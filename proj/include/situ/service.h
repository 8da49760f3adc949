/*
 * Copyright (C) 2026 The Situ Talker Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Session hosting: one DialogueState per session behind a mutex, shared
// immutable worlds, and the JSON views the HTTP API and the REPL print.

#ifndef SITU_SERVICE_H_
#define SITU_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "situ/dialogue.h"
#include "situ/ppm.h"
#include "situ/world.h"

namespace situ::service {

struct TurnRecord {
  uint64_t turn = 0;
  std::string input_kind;  // "utterance", "enter", "look_at", "scanline"
  std::string input;       // utterance text or target id
  std::string spoken;
  dialogue::DisplayMessage display;
  std::string status;
  std::string template_name;
  ObjectId situation{0};
  std::string situation_label;
};

nlohmann::json ToJson(const dialogue::DisplayMessage& display);
nlohmann::json ToJson(const TurnRecord& record);

// Result of scanning a raster: the turn it caused, or the decode outcome
// alone when no code was found.
struct ScanResult {
  std::optional<ObjectId> decoded;
  std::optional<TurnRecord> record;
  uint64_t turn = 0;  // session turn counter after the call
};

class SessionManager {
 public:
  // Worlds are read from <world_dir>/<name>.world on first use. When
  // log_path is set every turn is appended to it as one JSON line.
  explicit SessionManager(std::filesystem::path world_dir,
                          std::optional<std::filesystem::path> log_path = {});

  // Throws NotFoundError for an unknown world.
  std::shared_ptr<const World> GetWorld(const std::string& name);
  std::vector<std::string> Worlds() const;

  // Throws NotFoundError (unknown world) or SyntaxError (bad date).
  std::string Create(const std::string& world,
                     std::optional<std::string> date = std::nullopt);

  // All of these throw NotFoundError for an unknown session.
  TurnRecord Utterance(const std::string& id, const std::string& text);
  TurnRecord Event(const std::string& id, EventKind kind, ObjectId target);
  // Decodes every row and takes the majority ID; a code becomes a LOOK_AT
  // event. Throws SyntaxError for a malformed raster.
  ScanResult Scan(const std::string& id, std::string_view ppm_bytes);
  nlohmann::json State(const std::string& id, size_t tail = 10);
  std::vector<TurnRecord> Transcript(const std::string& id);

 private:
  struct Session {
    std::mutex mutex;
    std::string id;
    std::shared_ptr<const World> world;
    dialogue::DialogueState state;
    std::vector<TurnRecord> transcript;
    uint64_t event_sequence = 0;
  };

  std::shared_ptr<Session> Find(const std::string& id);
  TurnRecord Apply(Session& session, const dialogue::TurnInput& input,
                   std::string kind, std::string text);
  void Log(const Session& session, const TurnRecord& record);

  std::filesystem::path world_dir_;
  std::optional<std::filesystem::path> log_path_;

  mutable std::mutex worlds_mutex_;
  std::map<std::string, std::shared_ptr<const World>> worlds_;

  std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  uint64_t next_session_ = 0;

  std::mutex log_mutex_;
  std::ofstream log_;
};

// Majority vote over rows of the raster; ties go to the smaller ID.
std::optional<ObjectId> DecodeRaster(const ppm::Image& image);

}  // namespace situ::service

#endif  // SITU_SERVICE_H_
