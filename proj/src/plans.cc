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

#include "situ/plans.h"

#include <algorithm>
#include <cmath>

#include "situ/errors.h"

namespace situ::plans {
namespace {

void ClimbFrom(const PlanLibrary& library, std::vector<std::string>& path,
               const Bindings& bindings, std::vector<Explanation>& out) {
  const EventSchema* event = library.Find(path.back());
  if (event->goal) {
    Explanation explanation;
    explanation.path = path;
    explanation.bindings = bindings;
    Substitute(*event->goal, bindings, &explanation.bound_variables);
    out.push_back(std::move(explanation));
    return;
  }
  for (const Link* link : library.Parents(path.back())) {
    if (std::find(path.begin(), path.end(), link->parent) != path.end()) {
      continue;
    }
    path.push_back(link->parent);
    ClimbFrom(library, path, bindings, out);
    path.pop_back();
  }
}

bool RankBefore(const Intention& a, const Intention& b) {
  if (a.specificity != b.specificity) return a.specificity > b.specificity;
  if (a.event() != b.event()) return a.event() < b.event();
  return a.explanation < b.explanation;
}

Frame Instantiate(const Frame& pattern, const Bindings& bindings) {
  return RewriteSpeaker(Substitute(pattern, bindings));
}

}  // namespace

std::vector<Explanation> Explain(const Frame& frame, const PlanLibrary& library,
                                 const BeliefModel& beliefs) {
  std::vector<Explanation> out;
  for (const EventSchema& event : library.events()) {
    if (!event.trigger) continue;
    Bindings bindings;
    if (!Match(*event.trigger, frame, bindings)) continue;
    std::vector<std::string> path{event.name};
    ClimbFrom(library, path, bindings, out);
  }
  const std::string* recent =
      beliefs.committed.empty() ? nullptr : &beliefs.committed.back().event();
  for (Explanation& explanation : out) {
    explanation.specificity =
        static_cast<double>(explanation.path.size() - 1) +
        explanation.bound_variables +
        (recent != nullptr && *recent == explanation.path.back() ? 1.0 : 0.0);
  }
  return out;
}

std::vector<Intention> RecognizeIntention(const Frame& frame,
                                          const PlanLibrary& library,
                                          const BeliefModel& beliefs) {
  if (frame.Find("situation") == nullptr) {
    throw ContractError("intention recognition needs a situated frame");
  }
  const std::vector<Explanation> explanations =
      Explain(frame, library, beliefs);
  if (explanations.empty()) return {};

  double top = explanations.front().specificity;
  for (const Explanation& e : explanations) top = std::max(top, e.specificity);
  double total = 0.0;
  for (const Explanation& e : explanations) {
    total += std::exp(e.specificity - top);
  }

  std::vector<Intention> intentions;
  for (const Explanation& explanation : explanations) {
    const EventSchema& goal_event = *library.Find(explanation.path.back());
    Intention intention;
    intention.frame = Instantiate(*goal_event.goal, explanation.bindings);
    intention.specificity = explanation.specificity;
    intention.preference = std::exp(explanation.specificity - top) / total;
    intention.explanation = explanation.path;
    for (const std::string& name : explanation.path) {
      const EventSchema& event = *library.Find(name);
      for (const Frame& p : event.preconditions) {
        intention.preconditions.push_back(Instantiate(p, explanation.bindings));
      }
      for (const Frame& e : event.effects) {
        intention.effects.push_back(Instantiate(e, explanation.bindings));
      }
    }
    intentions.push_back(std::move(intention));
  }
  std::sort(intentions.begin(), intentions.end(), RankBefore);
  return intentions;
}

Frame RewriteSpeaker(Frame frame) {
  if (frame.type == "i") frame.type = "speaker";
  VisitFillers(frame, [](Filler& filler) {
    if (auto* ref = std::get_if<InstanceRef>(&filler)) {
      if (ref->type == "i") ref->type = "speaker";
    } else if (Frame* child = AsFrame(filler)) {
      if (child->type == "i") child->type = "speaker";
    }
  });
  return frame;
}

Frame StripCounters(Frame frame) {
  frame.counter = 0;
  VisitFillers(frame, [](Filler& filler) {
    if (auto* ref = std::get_if<InstanceRef>(&filler)) {
      ref->counter = 0;
    } else if (Frame* child = AsFrame(filler)) {
      child->counter = 0;
    }
  });
  return frame;
}

BeliefModel UpdateBeliefs(BeliefModel beliefs, const Intention& chosen,
                          const Frame& frame, std::span<const Frame> facts) {
  const int index =
      beliefs.history.empty() ? 1 : beliefs.history.back().index + 1;
  beliefs.history.push_back({index, frame});
  beliefs.committed.push_back(chosen);
  for (const Frame& precondition : chosen.preconditions) {
    const Frame pattern = StripCounters(precondition);
    const bool satisfied =
        std::any_of(facts.begin(), facts.end(), [&](const Frame& fact) {
          Bindings unused;
          return Match(pattern, fact, unused);
        });
    const bool already =
        std::find(beliefs.open_goals.begin(), beliefs.open_goals.end(),
                  precondition) != beliefs.open_goals.end();
    if (!satisfied && !already) beliefs.open_goals.push_back(precondition);
  }
  return beliefs;
}

}  // namespace situ::plans
