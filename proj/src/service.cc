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

#include "situ/service.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "situ/errors.h"

namespace situ::service {

using nlohmann::json;

json ToJson(const dialogue::DisplayMessage& display) {
  json items = json::array();
  for (const dialogue::DisplayItem& item : display.items) {
    json entry = {{"text", item.text}};
    if (!item.referent.empty()) entry["referent"] = item.referent;
    items.push_back(std::move(entry));
  }
  return {{"title", display.title}, {"items", std::move(items)},
          {"lines", display.Lines()}};
}

json ToJson(const TurnRecord& record) {
  return {{"turn", record.turn},
          {"input", {{"kind", record.input_kind}, {"text", record.input}}},
          {"spoken", record.spoken},
          {"display", ToJson(record.display)},
          {"status", record.status},
          {"template", record.template_name},
          {"situation",
           {{"id", record.situation.value()}, {"label", record.situation_label}}}};
}

std::optional<ObjectId> DecodeRaster(const ppm::Image& image) {
  std::map<uint32_t, size_t> votes;
  for (size_t y = 0; y < image.height; ++y) {
    if (auto id = colorcode::DecodeScanline(image.Row(y))) ++votes[id->value()];
  }
  if (votes.empty()) return std::nullopt;
  const auto best = std::max_element(
      votes.begin(), votes.end(),
      [](const auto& a, const auto& b) { return a.second < b.second; });
  return ObjectId(best->first);
}

SessionManager::SessionManager(std::filesystem::path world_dir,
                               std::optional<std::filesystem::path> log_path)
    : world_dir_(std::move(world_dir)), log_path_(std::move(log_path)) {
  if (log_path_) {
    log_.open(*log_path_, std::ios::app);
    if (!log_) throw ConfigError("cannot open transcript log " + log_path_->string());
  }
}

std::shared_ptr<const World> SessionManager::GetWorld(const std::string& name) {
  std::lock_guard lock(worlds_mutex_);
  if (auto it = worlds_.find(name); it != worlds_.end()) return it->second;
  const bool plain = !name.empty() &&
                     std::all_of(name.begin(), name.end(), [](char c) {
                       return std::isalnum(static_cast<unsigned char>(c)) ||
                              c == '-' || c == '_';
                     });
  const std::filesystem::path path = world_dir_ / (name + ".world");
  if (!plain || !std::filesystem::exists(path)) {
    throw NotFoundError("unknown world '" + name + "'");
  }
  auto world = LoadWorld(path);
  worlds_.emplace(name, world);
  return world;
}

std::vector<std::string> SessionManager::Worlds() const {
  return ListWorlds(world_dir_);
}

std::string SessionManager::Create(const std::string& world_name,
                                   std::optional<std::string> date) {
  auto world = GetWorld(world_name);
  std::optional<Date> start_date;
  if (date) start_date = ParseDate(*date);
  auto session = std::make_shared<Session>();
  session->world = world;
  session->state = dialogue::InitialState(world, start_date);

  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::unique_lock lock(sessions_mutex_);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "s%llu-%08llx",
                static_cast<unsigned long long>(++next_session_),
                static_cast<unsigned long long>(rng() & 0xffffffffULL));
  session->id = buf;
  sessions_.emplace(session->id, session);
  return session->id;
}

std::shared_ptr<SessionManager::Session> SessionManager::Find(const std::string& id) {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFoundError("unknown session '" + id + "'");
  return it->second;
}

TurnRecord SessionManager::Apply(Session& session, const dialogue::TurnInput& input,
                                 std::string kind, std::string text) {
  dialogue::TurnOutput out = dialogue::Step(session.state, input);
  TurnRecord record;
  record.turn = session.transcript.size() + 1;
  record.input_kind = std::move(kind);
  record.input = std::move(text);
  record.spoken = std::move(out.spoken);
  record.display = std::move(out.display);
  record.status = std::string(dialogue::TurnStatusName(out.status));
  record.template_name = std::move(out.template_name);
  session.state = std::move(out.state);
  if (session.state.context) {
    record.situation = session.state.context->entry.id;
    record.situation_label = session.state.context->entry.label;
  }
  session.transcript.push_back(record);
  Log(session, record);
  return record;
}

void SessionManager::Log(const Session& session, const TurnRecord& record) {
  if (!log_path_) return;
  json line = ToJson(record);
  line["session"] = session.id;
  line["world"] = session.world->name();
  std::lock_guard lock(log_mutex_);
  log_ << line.dump() << '\n';
  log_.flush();
}

TurnRecord SessionManager::Utterance(const std::string& id, const std::string& text) {
  auto session = Find(id);
  std::lock_guard lock(session->mutex);
  return Apply(*session, dialogue::Utterance{text}, "utterance", text);
}

TurnRecord SessionManager::Event(const std::string& id, EventKind kind, ObjectId target) {
  auto session = Find(id);
  std::lock_guard lock(session->mutex);
  const SituationEvent event{kind, target, ++session->event_sequence};
  return Apply(*session, event, std::string(EventKindName(kind)), ToString(target));
}

ScanResult SessionManager::Scan(const std::string& id, std::string_view ppm_bytes) {
  auto session = Find(id);
  const ppm::Image image = ppm::Parse(ppm_bytes);
  ScanResult result;
  result.decoded = DecodeRaster(image);
  std::lock_guard lock(session->mutex);
  if (result.decoded) {
    const SituationEvent event{EventKind::kLookAt, *result.decoded,
                               ++session->event_sequence};
    result.record = Apply(*session, event, "scanline", ToString(*result.decoded));
  }
  result.turn = session->transcript.size();
  return result;
}

json SessionManager::State(const std::string& id, size_t tail) {
  auto session = Find(id);
  std::lock_guard lock(session->mutex);
  const dialogue::DialogueState& state = session->state;
  json view;
  view["session"] = session->id;
  view["world"] = session->world->name();
  view["turn"] = session->transcript.size();
  view["date"] = IsoDate(state.date);
  if (state.context) {
    const SituationEntry& entry = state.context->entry;
    json adjacent = json::array();
    for (ObjectId next : entry.adjacent) {
      const SituationEntry* other = session->world->Lookup(next);
      adjacent.push_back({{"id", next.value()},
                          {"label", other ? other->label : std::string()}});
    }
    view["situation"] = {{"id", entry.id.value()},
                         {"label", entry.label},
                         {"entered", state.entered},
                         {"adjacent", std::move(adjacent)}};
  } else {
    view["situation"] = nullptr;
  }
  view["display"] = ToJson(state.display);
  json centers = json::array();
  for (const dialogue::DeicticCenter& center : state.centers) {
    centers.push_back({{"referent", ToString(center.referent)},
                       {"source", dialogue::CenterSourceName(center.source)}});
  }
  view["deictic_centers"] = std::move(centers);
  if (state.pending_clarification) {
    view["pending_clarification"] = {
        {"kind", state.pending_clarification->kind},
        {"surface", state.pending_clarification->surface},
        {"options", state.pending_clarification->options}};
  } else {
    view["pending_clarification"] = nullptr;
  }
  json transcript = json::array();
  const size_t n = session->transcript.size();
  for (size_t i = n > tail ? n - tail : 0; i < n; ++i) {
    transcript.push_back(ToJson(session->transcript[i]));
  }
  view["transcript"] = std::move(transcript);
  return view;
}

std::vector<TurnRecord> SessionManager::Transcript(const std::string& id) {
  auto session = Find(id);
  std::lock_guard lock(session->mutex);
  return session->transcript;
}

}  // namespace situ::service
