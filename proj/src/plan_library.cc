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

#include "situ/plan_library.h"

#include <functional>
#include <map>
#include <set>

#include "json.hpp"
#include "situ/errors.h"
#include "situ/world.h"

namespace situ::plans {
namespace {

using nlohmann::json;

std::string KindName(LinkKind kind) {
  return kind == LinkKind::kIsA ? "is_a" : "part_of";
}

void CheckAcyclic(const std::string& library, const std::vector<Link>& links,
                  LinkKind kind) {
  std::map<std::string, std::vector<std::string>> parents;
  for (const Link& link : links) {
    if (link.kind == kind) parents[link.child].push_back(link.parent);
  }
  enum class Mark { kNone, kActive, kDone };
  std::map<std::string, Mark> marks;
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    Mark& mark = marks[node];
    if (mark == Mark::kDone) return;
    if (mark == Mark::kActive) {
      throw LoadError("plan library " + library + ": " + KindName(kind) +
                      " cycle through " + node);
    }
    mark = Mark::kActive;
    for (const std::string& parent : parents[node]) visit(parent);
    marks[node] = Mark::kDone;
  };
  for (const Link& link : links) visit(link.child);
}

Frame PatternField(const json& value, const std::string& where) {
  if (!value.is_string()) throw LoadError(where + ": pattern must be a string");
  try {
    return ParseFrame(value.get<std::string>(), NameMode::kPattern);
  } catch (const SyntaxError& e) {
    throw LoadError(where + ": " + e.what());
  }
}

std::vector<Frame> PatternList(const json& event, const char* key,
                               const std::string& where) {
  std::vector<Frame> out;
  if (!event.contains(key)) return out;
  if (!event[key].is_array()) throw LoadError(where + "." + key + ": not a list");
  for (const json& item : event[key]) {
    out.push_back(PatternField(item, where + "." + key));
  }
  return out;
}

}  // namespace

PlanLibrary::PlanLibrary(std::string name, std::vector<EventSchema> events,
                         std::vector<Link> links)
    : name_(std::move(name)), events_(std::move(events)),
      links_(std::move(links)) {
  std::set<std::string> names;
  for (const EventSchema& event : events_) {
    if (event.name.empty()) throw LoadError("plan library " + name_ + ": unnamed event");
    if (!names.insert(event.name).second) {
      throw LoadError("plan library " + name_ + ": duplicate event " +
                      event.name);
    }
  }
  std::set<std::pair<std::string, std::string>> pairs;
  for (const Link& link : links_) {
    for (const std::string* end : {&link.child, &link.parent}) {
      if (names.count(*end) == 0) {
        throw LoadError("plan library " + name_ + ": link references unknown event " + *end);
      }
    }
    if (!pairs.insert({link.child, link.parent}).second) {
      throw LoadError("plan library " + name_ + ": duplicate link " +
                      link.child + " -> " + link.parent);
    }
  }
  CheckAcyclic(name_, links_, LinkKind::kIsA);
  CheckAcyclic(name_, links_, LinkKind::kPartOf);
}

const EventSchema* PlanLibrary::Find(std::string_view event) const {
  for (const EventSchema& schema : events_) {
    if (schema.name == event) return &schema;
  }
  return nullptr;
}

std::vector<const Link*> PlanLibrary::Parents(std::string_view event) const {
  std::vector<const Link*> out;
  for (const Link& link : links_) {
    if (link.child == event) out.push_back(&link);
  }
  return out;
}

PlanLibrary ParsePlanLibrary(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw LoadError(std::string("plan library: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("name") || !doc["name"].is_string()) {
    throw LoadError("plan library: missing name");
  }
  const std::string name = doc["name"].get<std::string>();
  const std::string where = "plan library " + name;

  std::vector<EventSchema> events;
  if (!doc.contains("events") || !doc["events"].is_array()) {
    throw LoadError(where + ": missing events");
  }
  for (const json& item : doc["events"]) {
    if (!item.is_object() || !item.contains("name") ||
        !item["name"].is_string()) {
      throw LoadError(where + ": event without a name");
    }
    EventSchema event;
    event.name = item["name"].get<std::string>();
    const std::string at = where + " event " + event.name;
    if (item.contains("trigger") && !item["trigger"].is_null()) {
      event.trigger = PatternField(item["trigger"], at + ".trigger");
    }
    if (item.contains("goal") && !item["goal"].is_null()) {
      event.goal = PatternField(item["goal"], at + ".goal");
    }
    event.preconditions = PatternList(item, "preconditions", at);
    event.effects = PatternList(item, "effects", at);
    events.push_back(std::move(event));
  }

  std::vector<Link> links;
  if (doc.contains("links")) {
    for (const json& item : doc["links"]) {
      if (!item.is_array() || item.size() != 3 || !item[0].is_string() ||
          !item[1].is_string() || !item[2].is_string()) {
        throw LoadError(where + ": link must be [child, parent, kind]");
      }
      const std::string kind = item[2].get<std::string>();
      if (kind != "is_a" && kind != "part_of") {
        throw LoadError(where + ": unknown link kind " + kind);
      }
      links.push_back({item[0].get<std::string>(), item[1].get<std::string>(),
                       kind == "is_a" ? LinkKind::kIsA : LinkKind::kPartOf});
    }
  }
  return PlanLibrary(name, std::move(events), std::move(links));
}

const PlanLibrary& LoadPlanLibrary(const ContextSwitch& context) {
  return context.assets->Plans(context.entry.plan_library_id);
}

}  // namespace situ::plans
