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

// The simulated physical world: the situation table that binds tag IDs to
// dictionaries, knowledge bases, plan libraries, grammars and templates,
// plus the loaded assets themselves.

#ifndef SITU_WORLD_H_
#define SITU_WORLD_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "situ/colorcode.h"
#include "situ/grammar.h"
#include "situ/knowledge.h"
#include "situ/lexicon.h"
#include "situ/plan_library.h"
#include "situ/templates.h"

namespace situ {

inline constexpr int kWorldSchemaVersion = 1;

using Date = std::chrono::year_month_day;

// "1995-04-24". Throws SyntaxError on anything else or an invalid date.
Date ParseDate(std::string_view text);
std::string IsoDate(Date date);
// "April 24, 1995"
std::string LongDate(Date date);
Date AddDays(Date date, int days);

struct SituationEntry {
  ObjectId id{0};
  std::string label;
  std::string concept_type;  // instance type stamped into frames as :situation
  std::string subject;  // knowledge-base key the situation is about
  std::vector<std::string> message_resources;
  std::string dictionary_id;
  std::string knowledge_base_id;
  std::string plan_library_id;
  std::string grammar_id;
  std::string templates_id;
  std::string greeting;  // template name
  std::vector<ObjectId> adjacent;
};

struct WorldObject {
  ObjectId id{0};
  std::string label;
  std::string description;
};

// Loaded assets by name. Lookups throw ConfigError for unknown names.
class AssetStore {
 public:
  const Lexicon& Dictionary(const std::string& name) const;
  const dialogue::KnowledgeBase& Knowledge(const std::string& name) const;
  const plans::PlanLibrary& Plans(const std::string& name) const;
  const semantics::Grammar& Grammar(const std::string& name) const;
  // Situation templates merged over the world's common templates.
  const dialogue::TemplateSet& Templates(const std::string& name) const;

  // Union of every dictionary in the store.
  const Lexicon& Global() const { return global_; }
  std::vector<const Lexicon*> Dictionaries() const;

 private:
  friend class WorldLoader;

  std::map<std::string, Lexicon> dictionaries_;
  std::map<std::string, dialogue::KnowledgeBase> knowledge_;
  std::map<std::string, plans::PlanLibrary> plans_;
  std::map<std::string, semantics::Grammar> grammars_;
  std::map<std::string, dialogue::TemplateSet> templates_;
  Lexicon global_;
};

class World {
 public:
  const std::string& name() const { return name_; }
  Date date() const { return date_; }
  ObjectId start() const { return start_; }
  const std::vector<SituationEntry>& situations() const { return situations_; }
  const std::vector<WorldObject>& objects() const { return objects_; }
  const std::shared_ptr<const AssetStore>& assets() const { return assets_; }

  const SituationEntry* Lookup(ObjectId id) const;
  const WorldObject* Object(ObjectId id) const;

 private:
  friend class WorldLoader;

  std::string name_;
  Date date_{};
  ObjectId start_{0};
  std::vector<SituationEntry> situations_;
  std::vector<WorldObject> objects_;
  std::shared_ptr<const AssetStore> assets_;
};

// Parses a world document and loads every asset it names from asset_dir
// (dictionaries/<name>.dict, knowledge/<name>.json, plans/<name>.json,
// grammars/<name>.grammar, templates/<name>.templates). Validates all cross
// references. Throws LoadError naming the offending key.
std::shared_ptr<const World> LoadWorldDocument(
    std::string_view json_text, const std::filesystem::path& asset_dir);
// <dir>/<name>.world with assets in <dir>/<name>/.
std::shared_ptr<const World> LoadWorld(const std::filesystem::path& world_file);
std::vector<std::string> ListWorlds(const std::filesystem::path& dir);

enum class EventKind { kEnter, kLookAt };

std::string_view EventKindName(EventKind kind);
std::optional<EventKind> ParseEventKind(std::string_view text);

struct SituationEvent {
  EventKind kind = EventKind::kEnter;
  ObjectId target{0};
  uint64_t sequence = 0;
};

// Everything downstream modules swap in together when the situation
// changes. All asset ids come from `entry`.
struct ContextSwitch {
  SituationEntry entry;
  EventKind kind = EventKind::kEnter;
  std::shared_ptr<const AssetStore> assets;
  // The event re-targets the situation that is already active.
  bool no_op = false;
};

// Exact-match lookup; nullopt (not an error) for unknown IDs.
std::optional<SituationEntry> LookupSituation(const World& world, ObjectId id);

// nullopt when the target is not in the situation table. `active` is the
// situation the session last switched to, if any.
std::optional<ContextSwitch> ApplyEvent(const World& world,
                                        const SituationEvent& event,
                                        std::optional<ObjectId> active);

}  // namespace situ

#endif  // SITU_WORLD_H_
