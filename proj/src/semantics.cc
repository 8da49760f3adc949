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

#include "situ/semantics.h"

#include <algorithm>
#include <cmath>

#include "situ/errors.h"
#include "situ/world.h"

namespace situ::semantics {
namespace {

Filler FillGaps(const Filler& filler, const std::vector<GapBinding>& bindings);

Frame FillGaps(const Frame& skeleton, const std::vector<GapBinding>& bindings) {
  Frame out(skeleton.type, skeleton.counter);
  for (const Slot& slot : skeleton.slots) {
    out.slots.push_back({slot.role, FillGaps(slot.filler, bindings)});
  }
  return out;
}

Filler FillGaps(const Filler& filler, const std::vector<GapBinding>& bindings) {
  if (const auto* gap = std::get_if<Gap>(&filler)) {
    for (const GapBinding& binding : bindings) {
      if (binding.gap == gap->name) return binding.value;
    }
    return filler;
  }
  if (const Frame* frame = AsFrame(filler)) {
    return FrameBox(FillGaps(*frame, bindings));
  }
  return filler;
}

// Enumerates every way a rule pattern covers a whole hypothesis.
class RuleMatcher {
 public:
  RuleMatcher(const Grammar& grammar, const GrammarRule& rule,
              const std::vector<std::string>& words)
      : grammar_(grammar), rule_(rule), words_(words) {}

  std::vector<std::vector<GapBinding>> Run() {
    Step(0, 0);
    return std::move(matches_);
  }

 private:
  void Step(size_t element, size_t token) {
    if (element == rule_.pattern.size()) {
      if (token == words_.size()) matches_.push_back(current_);
      return;
    }
    const PatternElement& el = rule_.pattern[element];
    switch (el.kind) {
      case PatternElement::Kind::kOptionalWord:
        Step(element + 1, token);
        [[fallthrough]];
      case PatternElement::Kind::kWord:
        if (token < words_.size() && words_[token] == el.text) {
          Step(element + 1, token + 1);
        }
        return;
      case PatternElement::Kind::kGap:
        break;
    }
    const WordClass& word_class = grammar_.classes.at(el.text);
    for (const ClassEntry& entry : word_class.entries) {
      const size_t end = token + entry.phrase.size();
      if (end > words_.size() ||
          !std::equal(entry.phrase.begin(), entry.phrase.end(),
                      words_.begin() + static_cast<std::ptrdiff_t>(token))) {
        continue;
      }
      std::string surface;
      for (const std::string& word : entry.phrase) {
        surface += (surface.empty() ? "" : " ") + word;
      }
      for (const Filler& reading : entry.readings) {
        current_.push_back({el.text, token, end, surface, reading});
        Step(element + 1, end);
        current_.pop_back();
      }
    }
  }

  const Grammar& grammar_;
  const GrammarRule& rule_;
  const std::vector<std::string>& words_;
  std::vector<GapBinding> current_;
  std::vector<std::vector<GapBinding>> matches_;
};

bool BetterScored(const ScoredCandidate& a, const ScoredCandidate& b) {
  if (a.score != b.score) return a.score > b.score;
  const Candidate& x = *a.candidate;
  const Candidate& y = *b.candidate;
  if (x.hypothesis_rank != y.hypothesis_rank) {
    return x.hypothesis_rank < y.hypothesis_rank;
  }
  if (x.rule_index != y.rule_index) return x.rule_index < y.rule_index;
  return x.order < y.order;
}

}  // namespace

Preference MakePreference(const PreferenceSpec& spec) {
  if (!std::isfinite(spec.weight)) {
    throw LoadError("preference " + spec.test + ": weight must be finite");
  }
  Preference preference{spec.test, spec.weight, nullptr};
  if (spec.test == "rule-preference") {
    preference.test = [](const Candidate& c, const PreferenceContext&) {
      return c.rule_preference;
    };
  } else if (spec.test == "hypothesis-score") {
    preference.test = [](const Candidate& c, const PreferenceContext&) {
      return c.hypothesis_score;
    };
  } else if (spec.test == "kb-known") {
    preference.test = [](const Candidate& c, const PreferenceContext& ctx) {
      for (const GapBinding& binding : c.bindings) {
        if (!std::holds_alternative<InstanceRef>(binding.value)) continue;
        if (!ctx.is_known || !ctx.is_known(ConceptKey(binding.value))) {
          return 0.0;
        }
      }
      return 1.0;
    };
  } else if (spec.test.rfind("has-role:", 0) == 0) {
    const std::string role = spec.test.substr(9);
    preference.test = [role](const Candidate& c, const PreferenceContext&) {
      return c.frame.Find(role) != nullptr ? 1.0 : 0.0;
    };
  } else {
    throw LoadError("unknown preference test '" + spec.test + "'");
  }
  return preference;
}

std::vector<Preference> GrammarPreferences(const Grammar& grammar) {
  std::vector<PreferenceSpec> specs = grammar.preferences;
  if (specs.empty()) {
    specs = {{"rule-preference", 1.0},
             {"hypothesis-score", 1.0},
             {"kb-known", 0.5}};
  }
  std::vector<Preference> out;
  for (const PreferenceSpec& spec : specs) out.push_back(MakePreference(spec));
  return out;
}

std::vector<Candidate> Parse(const recognizer::NBestList& nbest,
                             const Grammar& grammar) {
  std::vector<Candidate> candidates;
  for (size_t rank = 0; rank < nbest.hypotheses.size(); ++rank) {
    const recognizer::Hypothesis& hypothesis = nbest.hypotheses[rank];
    for (size_t r = 0; r < grammar.rules.size(); ++r) {
      const GrammarRule& rule = grammar.rules[r];
      for (auto& bindings :
           RuleMatcher(grammar, rule, hypothesis.words).Run()) {
        Candidate candidate;
        candidate.frame = FillGaps(rule.skeleton, bindings);
        candidate.words = hypothesis.words;
        candidate.hypothesis_rank = rank;
        candidate.hypothesis_score = hypothesis.score();
        candidate.rule_index = r;
        candidate.rule_preference = rule.preference;
        candidate.order = candidates.size();
        candidate.bindings = std::move(bindings);
        candidates.push_back(std::move(candidate));
      }
    }
  }
  return candidates;
}

std::vector<const Candidate*> Disambiguation::Tied(double margin) const {
  std::vector<const Candidate*> tied;
  if (ranked.empty()) return tied;
  for (const ScoredCandidate& scored : ranked) {
    if (ranked.front().score - scored.score < margin) {
      tied.push_back(scored.candidate);
    }
  }
  return tied;
}

Disambiguation Disambiguate(const std::vector<Candidate>& candidates,
                            const std::vector<Preference>& preferences,
                            const PreferenceContext& context, double margin) {
  Disambiguation result;
  if (candidates.empty()) return result;

  std::vector<ScoredCandidate> scored;
  scored.reserve(candidates.size());
  for (const Candidate& candidate : candidates) {
    double score = 0.0;
    for (const Preference& preference : preferences) {
      score += preference.weight * preference.test(candidate, context);
    }
    scored.push_back({&candidate, score});
  }
  std::sort(scored.begin(), scored.end(), BetterScored);

  for (const ScoredCandidate& entry : scored) {
    const bool seen = std::any_of(
        result.ranked.begin(), result.ranked.end(), [&](const auto& kept) {
          return kept.candidate->frame == entry.candidate->frame;
        });
    if (!seen) result.ranked.push_back(entry);
  }
  result.status = result.ranked.size() > 1 &&
                          result.ranked[0].score - result.ranked[1].score <
                              margin
                      ? Disambiguation::Status::kAmbiguous
                      : Disambiguation::Status::kChosen;
  return result;
}

Frame AttachSituation(Frame frame, const SituationEntry& situation,
                      InstanceCounter& counter) {
  if (frame.Find("situation") != nullptr) {
    throw ContractError("frame " + frame.InstanceName() +
                        " already has a :situation slot");
  }
  frame.slots.push_back(
      {"situation",
       InstanceRef{situation.concept_type, counter.Next(situation.concept_type)}});
  return frame;
}

}  // namespace situ::semantics
