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

// Abductive intention recognition over a plan library.
//
// An explanation of an observed frame is a chain of events e0 .. ek where
// e0's trigger matches the frame, each step follows a link from child to
// parent, ek carries a goal and no earlier event does (climbing stops at the
// first goal), and no event repeats. Its intention is ek's goal instantiated
// with the trigger bindings, with the speaker's *i-n rewritten to
// *speaker-n.
//
// Specificity = links climbed + goal variables bound + 1 when ek is the
// event behind the most recently committed intention. Preferences are the
// softmax of specificity over all explanations of the frame.

#ifndef SITU_PLANS_H_
#define SITU_PLANS_H_

#include <span>
#include <string>
#include <vector>

#include "situ/frame.h"
#include "situ/plan_library.h"

namespace situ::plans {

struct Intention {
  Frame frame;  // goal-created nodes are unnumbered until committed
  double preference = 0.0;
  double specificity = 0.0;
  std::vector<std::string> explanation;  // e0 .. ek
  std::vector<Frame> preconditions;      // instantiated
  std::vector<Frame> effects;

  const std::string& event() const { return explanation.back(); }
};

struct BeliefModel {
  struct Turn {
    int index = 0;
    Frame frame;
  };
  std::vector<Intention> committed;
  std::vector<Frame> open_goals;
  std::vector<Turn> history;
};

// Raw explanation before scoring; exposed for tests and tracing.
struct Explanation {
  std::vector<std::string> path;
  Bindings bindings;
  int bound_variables = 0;
  double specificity = 0.0;
};

std::vector<Explanation> Explain(const Frame& frame, const PlanLibrary& library,
                                 const BeliefModel& beliefs);

// Ranked by preference (descending), ties by explaining event name then
// path. Empty when no trigger matches. Throws ContractError when the frame
// has no :situation slot.
std::vector<Intention> RecognizeIntention(const Frame& frame,
                                          const PlanLibrary& library,
                                          const BeliefModel& beliefs);

// *i-n -> *speaker-n everywhere in the frame.
Frame RewriteSpeaker(Frame frame);

// Copy with every counter reset to 0, for matching against stored facts.
Frame StripCounters(Frame frame);

// Appends the frame to the history, commits the intention and records as
// open goals the intention's preconditions that no fact satisfies.
BeliefModel UpdateBeliefs(BeliefModel beliefs, const Intention& chosen,
                          const Frame& frame, std::span<const Frame> facts);

}  // namespace situ::plans

#endif  // SITU_PLANS_H_
