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

#ifndef SITU_KNOWLEDGE_H_
#define SITU_KNOWLEDGE_H_

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "situ/frame.h"

namespace situ::dialogue {

// Attribute values are text or lists of text. Text starting with '@' refers
// to another fact by key.
using AttributeValue = std::variant<std::string, std::vector<std::string>>;

struct Fact {
  std::string type;
  std::string key;
  std::map<std::string, AttributeValue> attributes;

  const AttributeValue* Attribute(std::string_view name) const;
  // (*<type> (:is *<key>) (:<attr> "<text>") ...), list attributes omitted;
  // references become instance references.
  Frame AsFrame() const;
};

// Flat fact storage with key lookup; no inference.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  // Throws LoadError when a (type, key) pair repeats.
  KnowledgeBase(std::string name, std::vector<Fact> facts);

  const std::string& name() const { return name_; }
  const std::vector<Fact>& facts() const { return facts_; }

  // First fact with this key, in file order.
  const Fact* Find(std::string_view key) const;
  bool Knows(std::string_view key) const { return Find(key) != nullptr; }
  const std::vector<Frame>& frames() const { return frames_; }

 private:
  std::string name_;
  std::vector<Fact> facts_;
  std::vector<Frame> frames_;
};

// JSON array of objects with "type", "key" and attribute members whose
// values are strings, numbers or arrays of strings. Throws LoadError.
KnowledgeBase ParseKnowledgeBase(std::string name, std::string_view json_text);

}  // namespace situ::dialogue

#endif  // SITU_KNOWLEDGE_H_
