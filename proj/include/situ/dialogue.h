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

// The turn loop. Each turn consumes either an utterance or a situation
// event and yields one TurnOutput that carries the spoken text and the
// display together.

#ifndef SITU_DIALOGUE_H_
#define SITU_DIALOGUE_H_

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "situ/frame.h"
#include "situ/knowledge.h"
#include "situ/plans.h"
#include "situ/templates.h"
#include "situ/world.h"

namespace situ::dialogue {

// Lower value wins when resolving "this".
enum class CenterSource { kObject = 0, kDisplayed = 1, kMentioned = 2, kLocation = 3 };

std::string_view CenterSourceName(CenterSource source);

struct DeicticCenter {
  Filler referent;  // unnumbered InstanceRef (knowledge key) or Literal
  CenterSource source = CenterSource::kLocation;
  uint64_t recency = 0;  // larger is more recent
  size_t position = 0;   // order within one batch, e.g. display order
};

// Priority, then recency (newest first), then position.
bool CenterBefore(const DeicticCenter& a, const DeicticCenter& b);

struct DisplayItem {
  std::string text;
  std::string referent;  // knowledge key, empty for plain text

  friend bool operator==(const DisplayItem&, const DisplayItem&) = default;
};

struct DisplayMessage {
  std::string title;
  std::vector<DisplayItem> items;

  // Title line followed by "1. item" lines.
  std::vector<std::string> Lines() const;
  std::vector<std::string> ItemTexts() const;

  friend bool operator==(const DisplayMessage&, const DisplayMessage&) = default;
};

struct Clarification {
  std::string kind;  // template name that asked
  std::string surface;
  std::vector<std::string> options;
};

struct DialogueState {
  std::shared_ptr<const World> world;

  // Linguistic context.
  std::vector<Frame> frame_history;
  std::string last_system_utterance;
  std::optional<Clarification> pending_clarification;
  plans::BeliefModel beliefs;
  InstanceCounter counter;

  // Non-linguistic context.
  std::optional<ContextSwitch> context;
  bool entered = false;  // an event has switched to `context`
  DisplayMessage display;
  Date date{};
  std::vector<DeicticCenter> centers;  // kept sorted by CenterBefore
  uint64_t clock = 0;

  size_t nbest = 5;
};

// Session start: the world's start situation is active but not yet entered,
// so the first ENTER of it still greets.
DialogueState InitialState(std::shared_ptr<const World> world,
                           std::optional<Date> date = std::nullopt);

enum class TurnStatus {
  kGreeting,
  kAnswer,
  kClarification,
  kPromptAgain,
  kApology,
  kFallback,
  kNoOp,
  kUnknownCode,
};

std::string_view TurnStatusName(TurnStatus status);

struct TurnOutput {
  std::string spoken;
  DisplayMessage display;
  DialogueState state;
  TurnStatus status = TurnStatus::kAnswer;
  std::string template_name;
};

struct DeicticResult {
  enum class Status { kGrounded, kUnresolved, kOutOfRange };
  Frame frame;
  Status status = Status::kGrounded;
  std::string expression;  // what could not be grounded
};

// Grounds *this / *that (best center of any source), *here (best location
// center), *today / *tomorrow / *yesterday (dates relative to the state's
// date) and (*ordinal-ref (:ordinal k) (:over *displayed)) (k-th displayed
// item). Ungroundable references become (*unresolved (:expression ...)).
DeicticResult ResolveDeictics(const Frame& frame, const DialogueState& state);

// Values a template gap can start from besides the intention's slots.
struct TemplateScope {
  const Frame* frame = nullptr;
  std::map<std::string, Filler> roots;
  std::map<std::string, std::string> text;  // plain text roots
  std::map<std::string, std::vector<std::string>> lists;
};

struct Rendered {
  std::string spoken;
  std::optional<DisplayMessage> display;
};

// Fills every {gap}; nullopt when some gap has no value (a knowledge miss).
std::optional<Rendered> RenderTemplate(const ResponseTemplate& tmpl,
                                       const TemplateScope& scope,
                                       const KnowledgeBase& kb, Date today);

// Picks "<type>/<theme type>" or "<type>" for the intention, fills it from
// the intention and the knowledge base, and records the display as the new
// DISPLAYED deictic centers. Knowledge misses give the apology template, a
// missing template the generic fallback.
TurnOutput GenerateResponse(const plans::Intention& intention,
                            const KnowledgeBase& kb,
                            const TemplateSet& templates, DialogueState state);

// Activates the switch's assets, resets deictic centers to the new
// situation and speaks its greeting.
TurnOutput OnSituationEnter(DialogueState state, const ContextSwitch& context);

struct Utterance {
  std::string text;
};

using TurnInput = std::variant<Utterance, SituationEvent>;

TurnOutput Step(DialogueState state, const TurnInput& input);

}  // namespace situ::dialogue

#endif  // SITU_DIALOGUE_H_
