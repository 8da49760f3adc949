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

#include "situ/knowledge.h"

#include <set>

#include "json.hpp"
#include "situ/errors.h"

namespace situ::dialogue {

const AttributeValue* Fact::Attribute(std::string_view name) const {
  const auto it = attributes.find(std::string(name));
  return it == attributes.end() ? nullptr : &it->second;
}

Frame Fact::AsFrame() const {
  Frame frame(type);
  frame.slots.push_back({"is", InstanceRef{key, 0}});
  for (const auto& [name, value] : attributes) {
    const auto* text = std::get_if<std::string>(&value);
    if (text == nullptr || name == "is") continue;
    if (!text->empty() && text->front() == '@') {
      frame.slots.push_back({name, InstanceRef{text->substr(1), 0}});
    } else {
      frame.slots.push_back({name, Literal{*text}});
    }
  }
  return frame;
}

KnowledgeBase::KnowledgeBase(std::string name, std::vector<Fact> facts)
    : name_(std::move(name)), facts_(std::move(facts)) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const Fact& fact : facts_) {
    if (!seen.insert({fact.type, fact.key}).second) {
      throw LoadError("knowledge base " + name_ + ": duplicate fact " +
                      fact.type + "/" + fact.key);
    }
    frames_.push_back(fact.AsFrame());
  }
}

const Fact* KnowledgeBase::Find(std::string_view key) const {
  for (const Fact& fact : facts_) {
    if (fact.key == key) return &fact;
  }
  return nullptr;
}

KnowledgeBase ParseKnowledgeBase(std::string name, std::string_view json_text) {
  using nlohmann::json;
  const std::string where = "knowledge base " + name;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw LoadError(where + ": " + e.what());
  }
  if (!doc.is_array()) throw LoadError(where + ": expected a fact array");
  std::vector<Fact> facts;
  for (const json& item : doc) {
    if (!item.is_object() || !item.contains("type") || !item.contains("key") ||
        !item["type"].is_string() || !item["key"].is_string()) {
      throw LoadError(where + ": fact needs string type and key");
    }
    Fact fact;
    fact.type = item["type"].get<std::string>();
    fact.key = item["key"].get<std::string>();
    for (const auto& [attr, value] : item.items()) {
      if (attr == "type" || attr == "key") continue;
      const std::string at = where + " fact " + fact.key + "." + attr;
      if (value.is_string()) {
        fact.attributes[attr] = value.get<std::string>();
      } else if (value.is_number()) {
        fact.attributes[attr] = value.dump();
      } else if (value.is_array()) {
        std::vector<std::string> list;
        for (const json& entry : value) {
          if (!entry.is_string()) throw LoadError(at + ": list of strings expected");
          list.push_back(entry.get<std::string>());
        }
        fact.attributes[attr] = std::move(list);
      } else {
        throw LoadError(at + ": unsupported value");
      }
    }
    facts.push_back(std::move(fact));
  }
  return KnowledgeBase(std::move(name), std::move(facts));
}

}  // namespace situ::dialogue
