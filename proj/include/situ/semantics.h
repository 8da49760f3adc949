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

#ifndef SITU_SEMANTICS_H_
#define SITU_SEMANTICS_H_

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "situ/frame.h"
#include "situ/grammar.h"
#include "situ/recognizer.h"

namespace situ {
struct SituationEntry;
}

namespace situ::semantics {

// Score gap below which the two best distinct readings count as a tie that
// needs a clarification question.
inline constexpr double kAmbiguityMargin = 0.1;

struct GapBinding {
  std::string gap;
  size_t begin = 0;  // token span [begin, end) in the hypothesis
  size_t end = 0;
  std::string surface;
  Filler value;
};

struct Candidate {
  Frame frame;  // unnumbered
  std::vector<std::string> words;
  size_t hypothesis_rank = 0;
  double hypothesis_score = 0.0;
  size_t rule_index = 0;
  double rule_preference = 0.0;
  size_t order = 0;  // emission order, the final tie-break
  std::vector<GapBinding> bindings;
};

struct PreferenceContext {
  // Whether the active knowledge base has a fact keyed by this concept.
  std::function<bool(std::string_view)> is_known;
};

struct Preference {
  std::string name;
  double weight = 0.0;
  // 0/1 for boolean tests; numeric features return their value.
  std::function<double(const Candidate&, const PreferenceContext&)> test;
};

// Builds a declarative preference. Tests:
//   rule-preference   the rule's base preference
//   hypothesis-score  the recognizer score (<= 0)
//   kb-known          1 when every concept captured by a gap is known
//   has-role:<role>   1 when the frame has that top-level slot
// Throws LoadError for an unknown test or a non-finite weight.
Preference MakePreference(const PreferenceSpec& spec);

// The grammar's declared preferences, or the defaults
// {rule-preference 1, hypothesis-score 1, kb-known 0.5} when it has none.
std::vector<Preference> GrammarPreferences(const Grammar& grammar);

// Every full-cover match of every rule against every hypothesis. Empty when
// nothing matches.
std::vector<Candidate> Parse(const recognizer::NBestList& nbest,
                             const Grammar& grammar);

struct ScoredCandidate {
  const Candidate* candidate = nullptr;
  double score = 0.0;
};

struct Disambiguation {
  enum class Status { kChosen, kAmbiguous, kNoParse };
  Status status = Status::kNoParse;
  // Best-scoring candidate per distinct frame, best first.
  std::vector<ScoredCandidate> ranked;

  const Candidate& best() const { return *ranked.front().candidate; }
  // Distinct readings whose score is within the margin of the best.
  std::vector<const Candidate*> Tied(double margin = kAmbiguityMargin) const;
};

// Scores each candidate as the weighted sum of its preference tests and
// ranks them (ties: earlier hypothesis, earlier rule, earlier emission). The
// result is kAmbiguous when the runner-up distinct reading is within the
// margin of the winner.
Disambiguation Disambiguate(const std::vector<Candidate>& candidates,
                            const std::vector<Preference>& preferences,
                            const PreferenceContext& context,
                            double margin = kAmbiguityMargin);

// Adds (:situation *<concept>-n). Throws ContractError when the frame is
// already situated.
Frame AttachSituation(Frame frame, const SituationEntry& situation,
                      InstanceCounter& counter);

}  // namespace situ::semantics

#endif  // SITU_SEMANTICS_H_
