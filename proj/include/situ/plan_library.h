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

// Plan libraries: event networks whose nodes carry trigger, precondition,
// effect and goal patterns, linked child -> parent by is-a and part-of.

#ifndef SITU_PLAN_LIBRARY_H_
#define SITU_PLAN_LIBRARY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "situ/frame.h"

namespace situ {
struct ContextSwitch;
}

namespace situ::plans {

enum class LinkKind { kIsA, kPartOf };

struct EventSchema {
  std::string name;
  std::optional<Frame> trigger;  // what an observed utterance frame matches
  std::vector<Frame> preconditions;
  std::vector<Frame> effects;
  std::optional<Frame> goal;  // the intention this event explains
};

struct Link {
  std::string child;
  std::string parent;
  LinkKind kind = LinkKind::kPartOf;
};

class PlanLibrary {
 public:
  PlanLibrary() = default;
  // Throws LoadError: duplicate event, dangling or duplicate link, cycle
  // among is-a links or among part-of links.
  PlanLibrary(std::string name, std::vector<EventSchema> events,
              std::vector<Link> links);

  const std::string& name() const { return name_; }
  const std::vector<EventSchema>& events() const { return events_; }
  const std::vector<Link>& links() const { return links_; }

  const EventSchema* Find(std::string_view event) const;
  // Links whose child is `event`, in declaration order.
  std::vector<const Link*> Parents(std::string_view event) const;

 private:
  std::string name_;
  std::vector<EventSchema> events_;
  std::vector<Link> links_;
};

// JSON document:
//   {"name": ..., "events": [{"name", "trigger", "preconditions", "effects",
//    "goal"}], "links": [[child, parent, "is_a" | "part_of"]]}
// Patterns are strings in frame syntax. Throws LoadError.
PlanLibrary ParsePlanLibrary(std::string_view json_text);

// The situation's plan library. Throws ConfigError when unresolvable.
const PlanLibrary& LoadPlanLibrary(const ContextSwitch& context);

}  // namespace situ::plans

#endif  // SITU_PLAN_LIBRARY_H_
