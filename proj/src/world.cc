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

#include "situ/world.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "situ/errors.h"

namespace situ {
namespace {

using nlohmann::json;

constexpr std::array<const char*, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

template <typename Map>
const typename Map::mapped_type& Resolve(const Map& map, const std::string& name,
                                         const char* kind) {
  const auto it = map.find(name);
  if (it == map.end()) {
    throw ConfigError(std::string("no ") + kind + " named '" + name + "'");
  }
  return it->second;
}

std::string ReadText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

Date ParseDate(std::string_view text) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  char dash1 = 0;
  char dash2 = 0;
  std::istringstream in{std::string(text)};
  if (text.size() != 10 || !(in >> y >> dash1 >> m >> dash2 >> d) ||
      dash1 != '-' || dash2 != '-') {
    throw SyntaxError("bad date '" + std::string(text) + "', want YYYY-MM-DD");
  }
  const Date date{std::chrono::year{y}, std::chrono::month{m},
                  std::chrono::day{d}};
  if (!date.ok()) throw SyntaxError("invalid date '" + std::string(text) + "'");
  return date;
}

std::string IsoDate(Date date) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int{date.year()},
                unsigned{date.month()}, unsigned{date.day()});
  return buf;
}

std::string LongDate(Date date) {
  return std::string(kMonths[unsigned{date.month()} - 1]) + " " +
         std::to_string(unsigned{date.day()}) + ", " +
         std::to_string(int{date.year()});
}

Date AddDays(Date date, int days) {
  return Date{std::chrono::sys_days{date} + std::chrono::days{days}};
}

// ---------------------------------------------------------------------------

const Lexicon& AssetStore::Dictionary(const std::string& name) const {
  return Resolve(dictionaries_, name, "dictionary");
}
const dialogue::KnowledgeBase& AssetStore::Knowledge(
    const std::string& name) const {
  return Resolve(knowledge_, name, "knowledge base");
}
const plans::PlanLibrary& AssetStore::Plans(const std::string& name) const {
  return Resolve(plans_, name, "plan library");
}
const semantics::Grammar& AssetStore::Grammar(const std::string& name) const {
  return Resolve(grammars_, name, "grammar");
}
const dialogue::TemplateSet& AssetStore::Templates(
    const std::string& name) const {
  return Resolve(templates_, name, "template set");
}

std::vector<const Lexicon*> AssetStore::Dictionaries() const {
  std::vector<const Lexicon*> out;
  for (const auto& [name, lexicon] : dictionaries_) out.push_back(&lexicon);
  return out;
}

const SituationEntry* World::Lookup(ObjectId id) const {
  for (const SituationEntry& entry : situations_) {
    if (entry.id == id) return &entry;
  }
  return nullptr;
}

const WorldObject* World::Object(ObjectId id) const {
  for (const WorldObject& object : objects_) {
    if (object.id == id) return &object;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

class WorldLoader {
 public:
  WorldLoader(std::filesystem::path asset_dir, std::string default_name)
      : asset_dir_(std::move(asset_dir)) {
    world_->name_ = std::move(default_name);
  }

  std::shared_ptr<const World> Load(std::string_view text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::exception& e) {
      throw LoadError(std::string("world: ") + e.what());
    }
    if (!doc.is_object()) throw LoadError("world: document must be an object");
    if (Int(doc, "version", "world") != kWorldSchemaVersion) {
      throw LoadError("world: unsupported version (key 'version')");
    }
    if (doc.contains("name")) world_->name_ = Str(doc, "name", "world");
    where_ = "world " + world_->name_;
    try {
      world_->date_ = ParseDate(Str(doc, "date", where_));
    } catch (const SyntaxError& e) {
      throw LoadError(where_ + ": key 'date': " + e.what());
    }

    std::string common;
    if (doc.contains("common_templates")) {
      common = Str(doc, "common_templates", where_);
      common_ = LoadTemplateFile(common, "common_templates");
    }

    if (!doc.contains("situations") || !doc["situations"].is_array() ||
        doc["situations"].empty()) {
      throw LoadError(where_ + ": key 'situations' must be a non-empty list");
    }
    for (const json& item : doc["situations"]) Situation(item);

    std::set<ObjectId> ids;
    for (const SituationEntry& entry : world_->situations_) {
      ids.insert(entry.id);
    }
    for (const SituationEntry& entry : world_->situations_) {
      for (ObjectId next : entry.adjacent) {
        if (ids.count(next) == 0) {
          throw LoadError(where_ + ": situation " + ToString(entry.id) +
                          " key 'adjacent' references unknown situation " +
                          ToString(next));
        }
      }
    }
    world_->start_ = Id(doc, "start", where_);
    if (ids.count(world_->start_) == 0) {
      throw LoadError(where_ + ": key 'start' references unknown situation " +
                      ToString(world_->start_));
    }

    if (doc.contains("objects")) {
      if (!doc["objects"].is_array()) {
        throw LoadError(where_ + ": key 'objects' must be a list");
      }
      for (const json& item : doc["objects"]) {
        WorldObject object{Id(item, "id", where_ + " object"),
                           Str(item, "label", where_ + " object"),
                           item.value("description", std::string())};
        if (ids.count(object.id) == 0) {
          throw LoadError(where_ + ": object " + ToString(object.id) +
                          " has no situation entry");
        }
        world_->objects_.push_back(std::move(object));
      }
    }

    std::vector<const Lexicon*> parts;
    for (const auto& [name, lexicon] : store_->dictionaries_) {
      parts.push_back(&lexicon);
    }
    store_->global_ = MakeGlobalLexicon(parts);
    world_->assets_ = store_;
    return world_;
  }

 private:
  static const json& Field(const json& obj, const char* key,
                           const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) {
      throw LoadError(where + ": missing key '" + key + "'");
    }
    return obj[key];
  }

  static std::string Str(const json& obj, const char* key,
                         const std::string& where) {
    const json& value = Field(obj, key, where);
    if (!value.is_string()) {
      throw LoadError(where + ": key '" + key + "' must be a string");
    }
    return value.get<std::string>();
  }

  static int64_t Int(const json& obj, const char* key,
                     const std::string& where) {
    const json& value = Field(obj, key, where);
    if (!value.is_number_integer()) {
      throw LoadError(where + ": key '" + key + "' must be an integer");
    }
    return value.get<int64_t>();
  }

  static ObjectId ToId(const json& value, const std::string& where,
                       const char* key) {
    if (!value.is_number_integer() || value.get<int64_t>() < 0 ||
        value.get<int64_t>() > ObjectId::kMax) {
      throw LoadError(where + ": key '" + key + "' must be an id in 0..4095");
    }
    return ObjectId(value.get<uint32_t>());
  }

  static ObjectId Id(const json& obj, const char* key,
                     const std::string& where) {
    return ToId(Field(obj, key, where), where, key);
  }

  static void CheckAssetName(const std::string& name, const std::string& where,
                             const char* key) {
    const bool ok = !name.empty() && name.front() != '.' &&
                    std::all_of(name.begin(), name.end(), [](char c) {
                      return std::isalnum(static_cast<unsigned char>(c)) ||
                             c == '-' || c == '_' || c == '.';
                    });
    if (!ok) {
      throw LoadError(where + ": key '" + key + "' has bad asset name '" +
                      name + "'");
    }
  }

  std::filesystem::path AssetPath(const char* subdir, const std::string& name,
                                  const char* ext, const std::string& where,
                                  const char* key) {
    CheckAssetName(name, where, key);
    std::filesystem::path path = asset_dir_ / subdir / (name + ext);
    if (!std::filesystem::exists(path)) {
      throw LoadError(where + ": key '" + key + "' references unknown asset '" +
                      name + "' (" + path.string() + " not found)");
    }
    return path;
  }

  dialogue::TemplateSet LoadTemplateFile(const std::string& name,
                                         const char* key) {
    return dialogue::ParseTemplates(
        name, ReadText(AssetPath("templates", name, ".templates", where_, key)));
  }

  void Situation(const json& item) {
    SituationEntry entry;
    const std::string at = where_ + " situation";
    entry.id = Id(item, "id", at);
    const std::string here = where_ + " situation " + ToString(entry.id);
    if (world_->Lookup(entry.id) != nullptr) {
      throw LoadError(here + ": duplicate key 'id'");
    }
    entry.label = Str(item, "label", here);
    entry.concept_type = Str(item, "concept", here);
    entry.subject = Str(item, "subject", here);
    entry.dictionary_id = Str(item, "dictionary", here);
    entry.knowledge_base_id = Str(item, "knowledge_base", here);
    entry.plan_library_id = Str(item, "plan_library", here);
    entry.grammar_id = Str(item, "grammar", here);
    entry.templates_id = Str(item, "templates", here);
    entry.greeting = Str(item, "greeting", here);
    if (item.contains("resources")) {
      for (const json& r : item["resources"]) {
        if (!r.is_string()) throw LoadError(here + ": key 'resources' must list strings");
        entry.message_resources.push_back(r.get<std::string>());
      }
    }
    if (item.contains("adjacent")) {
      for (const json& a : item["adjacent"]) {
        entry.adjacent.push_back(ToId(a, here, "adjacent"));
      }
    }

    const Lexicon& lexicon = Dictionary(entry.dictionary_id, here);
    const dialogue::KnowledgeBase& kb = Knowledge(entry.knowledge_base_id, here);
    PlanLibrary(entry.plan_library_id, here);
    const semantics::Grammar& grammar = Grammar(entry.grammar_id, here);
    const dialogue::TemplateSet& templates = Templates(entry.templates_id, here);

    if (templates.Find(entry.greeting) == nullptr) {
      throw LoadError(here + ": key 'greeting' names unknown template '" +
                      entry.greeting + "'");
    }
    if (!kb.Knows(entry.subject)) {
      throw LoadError(here + ": key 'subject' '" + entry.subject +
                      "' is not in knowledge base " + kb.name());
    }
    for (const std::string& word : grammar.Vocabulary()) {
      if (!lexicon.Contains(word)) {
        throw LoadError(here + ": grammar " + grammar.name + " uses '" + word +
                        "' which dictionary " + lexicon.name + " lacks");
      }
    }
    world_->situations_.push_back(std::move(entry));
  }

  const Lexicon& Dictionary(const std::string& name, const std::string& where) {
    auto it = store_->dictionaries_.find(name);
    if (it == store_->dictionaries_.end()) {
      try {
        Lexicon lexicon = ParseLexicon(
            name, ReadText(AssetPath("dictionaries", name, ".dict", where,
                                     "dictionary")));
        it = store_->dictionaries_.emplace(name, std::move(lexicon)).first;
      } catch (const LoadError& e) {
        throw LoadError(where + ": " + e.what());
      }
    }
    return it->second;
  }

  const dialogue::KnowledgeBase& Knowledge(const std::string& name,
                                           const std::string& where) {
    auto it = store_->knowledge_.find(name);
    if (it == store_->knowledge_.end()) {
      auto kb = dialogue::ParseKnowledgeBase(
          name, ReadText(AssetPath("knowledge", name, ".json", where,
                                   "knowledge_base")));
      it = store_->knowledge_.emplace(name, std::move(kb)).first;
    }
    return it->second;
  }

  void PlanLibrary(const std::string& name, const std::string& where) {
    if (store_->plans_.count(name) != 0) return;
    plans::PlanLibrary library = plans::ParsePlanLibrary(
        ReadText(AssetPath("plans", name, ".json", where, "plan_library")));
    if (library.name() != name) {
      throw LoadError(where + ": plan library file " + name +
                      " declares name '" + library.name() + "'");
    }
    store_->plans_.emplace(name, std::move(library));
  }

  const semantics::Grammar& Grammar(const std::string& name,
                                    const std::string& where) {
    auto it = store_->grammars_.find(name);
    if (it == store_->grammars_.end()) {
      auto grammar = semantics::ParseGrammar(
          name, ReadText(AssetPath("grammars", name, ".grammar", where,
                                   "grammar")));
      it = store_->grammars_.emplace(name, std::move(grammar)).first;
    }
    return it->second;
  }

  const dialogue::TemplateSet& Templates(const std::string& name,
                                         const std::string& where) {
    auto it = store_->templates_.find(name);
    if (it == store_->templates_.end()) {
      dialogue::TemplateSet own = dialogue::ParseTemplates(
          name, ReadText(AssetPath("templates", name, ".templates", where,
                                   "templates")));
      it = store_->templates_.emplace(name, common_.MergedWith(own)).first;
    }
    return it->second;
  }

  std::filesystem::path asset_dir_;
  std::string where_;
  dialogue::TemplateSet common_;
  std::shared_ptr<World> world_ = std::make_shared<World>();
  std::shared_ptr<AssetStore> store_ = std::make_shared<AssetStore>();
};

std::shared_ptr<const World> LoadWorldDocument(
    std::string_view json_text, const std::filesystem::path& asset_dir) {
  return WorldLoader(asset_dir, asset_dir.filename().string()).Load(json_text);
}

std::shared_ptr<const World> LoadWorld(const std::filesystem::path& world_file) {
  const std::filesystem::path asset_dir =
      world_file.parent_path() / world_file.stem();
  return WorldLoader(asset_dir, world_file.stem().string())
      .Load(ReadText(world_file));
}

std::vector<std::string> ListWorlds(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  if (!std::filesystem::is_directory(dir)) return names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".world") {
      names.push_back(entry.path().stem().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::string_view EventKindName(EventKind kind) {
  return kind == EventKind::kEnter ? "enter" : "look_at";
}

std::optional<EventKind> ParseEventKind(std::string_view text) {
  if (text == "enter" || text == "ENTER") return EventKind::kEnter;
  if (text == "look_at" || text == "LOOK_AT" || text == "look") {
    return EventKind::kLookAt;
  }
  return std::nullopt;
}

std::optional<SituationEntry> LookupSituation(const World& world, ObjectId id) {
  const SituationEntry* entry = world.Lookup(id);
  if (entry == nullptr) return std::nullopt;
  return *entry;
}

std::optional<ContextSwitch> ApplyEvent(const World& world,
                                        const SituationEvent& event,
                                        std::optional<ObjectId> active) {
  const SituationEntry* entry = world.Lookup(event.target);
  if (entry == nullptr) return std::nullopt;
  ContextSwitch context;
  context.entry = *entry;
  context.kind = event.kind;
  context.assets = world.assets();
  context.no_op = active.has_value() && *active == event.target;
  return context;
}

}  // namespace situ
