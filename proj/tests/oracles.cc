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

#include "oracles.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace situ::oracle {
namespace {

// Every string reachable from `from` in at most `radius` single edits, with
// its distance.
std::map<std::string, size_t> Ball(const std::string& from, const std::string& alphabet,
                                   size_t radius) {
  std::map<std::string, size_t> seen{{from, 0}};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    const std::string s = queue.front();
    queue.pop_front();
    const size_t d = seen[s];
    if (d == radius) continue;
    std::vector<std::string> next;
    for (size_t i = 0; i <= s.size(); ++i) {
      for (char c : alphabet) next.push_back(s.substr(0, i) + c + s.substr(i));
    }
    for (size_t i = 0; i < s.size(); ++i) {
      next.push_back(s.substr(0, i) + s.substr(i + 1));
      for (char c : alphabet) {
        if (c != s[i]) next.push_back(s.substr(0, i) + c + s.substr(i + 1));
      }
      if (i + 1 < s.size()) {
        std::string t = s;
        std::swap(t[i], t[i + 1]);
        next.push_back(t);
      }
    }
    for (std::string& t : next) {
      if (seen.emplace(t, d + 1).second) queue.push_back(std::move(t));
    }
  }
  return seen;
}

int64_t ScaledCost(size_t distance, size_t longest) {
  const int64_t scale = recognizer::kCostScale;
  if (longest == 0) return 0;
  return (static_cast<int64_t>(distance) * scale + static_cast<int64_t>(longest) / 2) /
         static_cast<int64_t>(longest);
}

std::vector<std::string> Words(const std::string& raw) {
  std::vector<std::string> words;
  std::string current;
  for (char c : raw + " ") {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      words.push_back(current);
      current.clear();
    }
  }
  return words;
}

struct Choice {
  std::string word;
  int64_t cost;
};

std::vector<Choice> Admissible(const std::string& token, const Lexicon& lexicon) {
  std::string alphabet;
  for (const std::string& w : lexicon.words) alphabet += w;
  alphabet += token;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());

  size_t longest_word = 0;
  for (const std::string& w : lexicon.words) longest_word = std::max(longest_word, w.size());
  const size_t radius = std::max(longest_word, token.size()) / 2;
  const auto ball = Ball(token, alphabet, radius);

  std::vector<Choice> choices;
  for (const std::string& w : lexicon.words) {
    const auto it = ball.find(w);
    if (it == ball.end()) continue;
    const size_t longest = std::max(w.size(), token.size());
    // Within half the longer length.
    if (2 * it->second > longest) continue;
    choices.push_back({w, ScaledCost(it->second, longest)});
  }
  std::sort(choices.begin(), choices.end(), [](const Choice& a, const Choice& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.word < b.word;
  });
  if (choices.size() > recognizer::kBeamPerToken) choices.resize(recognizer::kBeamPerToken);
  if (choices.empty()) choices.push_back({recognizer::kOovMarker, recognizer::kCostScale});
  return choices;
}

// Independent one-way matcher for the oracle.
bool OracleMatch(const Filler& pattern, const Filler& value,
                 std::map<std::string, Filler>& env);

bool OracleMatchFrame(const Frame& pattern, const Frame& frame,
                      std::map<std::string, Filler>& env) {
  if (pattern.type != frame.type) return false;
  if (pattern.counter != 0 && pattern.counter != frame.counter) return false;
  for (const Slot& slot : pattern.slots) {
    const Slot* found = nullptr;
    for (const Slot& s : frame.slots) {
      if (s.role == slot.role) {
        found = &s;
        break;
      }
    }
    if (found == nullptr || !OracleMatch(slot.filler, found->filler, env)) return false;
  }
  return true;
}

bool OracleMatch(const Filler& pattern, const Filler& value,
                 std::map<std::string, Filler>& env) {
  if (const auto* v = std::get_if<Variable>(&pattern)) {
    auto [it, fresh] = env.emplace(v->name, value);
    return fresh || it->second == value;
  }
  if (const auto* box = std::get_if<FrameBox>(&pattern)) {
    const auto* other = std::get_if<FrameBox>(&value);
    return other != nullptr && OracleMatchFrame(box->get(), other->get(), env);
  }
  if (const auto* ref = std::get_if<InstanceRef>(&pattern)) {
    auto same = [&](const std::string& type, int counter) {
      return type == ref->type && (ref->counter == 0 || counter == ref->counter);
    };
    if (const auto* other = std::get_if<InstanceRef>(&value)) {
      return same(other->type, other->counter);
    }
    if (const auto* box = std::get_if<FrameBox>(&value)) {
      return same(box->get().type, box->get().counter);
    }
    return false;
  }
  return pattern == value;
}

int BoundSlots(const Frame& goal, const std::map<std::string, Filler>& env) {
  int bound = 0;
  for (const Slot& slot : goal.slots) {
    if (const auto* v = std::get_if<Variable>(&slot.filler)) {
      bound += env.count(v->name) ? 1 : 0;
    } else if (const auto* box = std::get_if<FrameBox>(&slot.filler)) {
      bound += BoundSlots(box->get(), env);
    }
  }
  return bound;
}

const plans::EventSchema* EventNamed(const plans::PlanLibrary& library,
                                     const std::string& name) {
  for (const auto& e : library.events()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void AllPaths(const plans::PlanLibrary& library, std::vector<std::string>& path,
              std::vector<std::vector<std::string>>& out) {
  out.push_back(path);
  for (const plans::Link& link : library.links()) {
    if (link.child != path.back()) continue;
    if (std::find(path.begin(), path.end(), link.parent) != path.end()) continue;
    path.push_back(link.parent);
    AllPaths(library, path, out);
    path.pop_back();
  }
}

}  // namespace

size_t EditDistance(const std::string& a, const std::string& b, size_t max_distance) {
  std::string alphabet = a + b;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  const auto ball = Ball(a, alphabet, max_distance);
  const auto it = ball.find(b);
  return it == ball.end() ? max_distance + 1 : it->second;
}

recognizer::NBestList ExhaustiveRecognize(const std::string& raw, const Lexicon& lexicon,
                                          size_t n) {
  std::vector<std::vector<Choice>> per_token;
  for (const std::string& token : Words(raw)) per_token.push_back(Admissible(token, lexicon));

  std::vector<recognizer::Hypothesis> all{recognizer::Hypothesis{}};
  for (const auto& choices : per_token) {
    std::vector<recognizer::Hypothesis> next;
    for (const auto& h : all) {
      for (const Choice& c : choices) {
        recognizer::Hypothesis e = h;
        e.words.push_back(c.word);
        e.cost += c.cost;
        next.push_back(std::move(e));
      }
    }
    all = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.words < b.words;
  });
  if (all.size() > n) all.resize(n);
  return recognizer::NBestList{std::move(all), n};
}

std::vector<RankedExplanation> EnumerateExplanations(const Frame& frame,
                                                     const plans::PlanLibrary& library,
                                                     const plans::BeliefModel& beliefs) {
  std::vector<RankedExplanation> out;
  std::vector<std::map<std::string, Filler>> envs;
  for (const plans::EventSchema& event : library.events()) {
    if (!event.trigger) continue;
    std::map<std::string, Filler> env;
    if (!OracleMatchFrame(*event.trigger, frame, env)) continue;
    std::vector<std::vector<std::string>> paths;
    std::vector<std::string> start{event.name};
    AllPaths(library, start, paths);
    for (const auto& path : paths) {
      // Ends at a goal and passes no goal on the way.
      bool valid = EventNamed(library, path.back())->goal.has_value();
      for (size_t i = 0; i + 1 < path.size() && valid; ++i) {
        valid = !EventNamed(library, path[i])->goal.has_value();
      }
      if (!valid) continue;
      RankedExplanation e;
      e.path = path;
      e.specificity = static_cast<double>(path.size() - 1) +
                      BoundSlots(*EventNamed(library, path.back())->goal, env);
      if (!beliefs.committed.empty() &&
          beliefs.committed.back().explanation.back() == path.back()) {
        e.specificity += 1.0;
      }
      out.push_back(std::move(e));
    }
  }
  double total = 0.0;
  for (const auto& e : out) total += std::exp(e.specificity);
  for (auto& e : out) e.preference = std::exp(e.specificity) / total;
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.specificity != b.specificity) return a.specificity > b.specificity;
    if (a.path.back() != b.path.back()) return a.path.back() < b.path.back();
    return a.path < b.path;
  });
  return out;
}

Lexicon RandomLexicon(std::mt19937_64& rng, size_t max_words) {
  const std::string alphabet = "abcd";
  std::uniform_int_distribution<size_t> count(1, max_words);
  std::uniform_int_distribution<size_t> length(1, 5);
  std::uniform_int_distribution<size_t> letter(0, alphabet.size() - 1);
  Lexicon lexicon;
  lexicon.name = "random";
  const size_t target = count(rng);
  for (size_t attempt = 0; lexicon.words.size() < target && attempt < 10 * target; ++attempt) {
    std::string w;
    for (size_t i = length(rng); i > 0; --i) w += alphabet[letter(rng)];
    lexicon.words.insert(w);
  }
  return lexicon;
}

std::string RandomUtterance(std::mt19937_64& rng, const Lexicon& lexicon,
                            size_t max_tokens) {
  const std::vector<std::string> words(lexicon.words.begin(), lexicon.words.end());
  std::uniform_int_distribution<size_t> tokens(1, max_tokens);
  std::uniform_int_distribution<size_t> pick(0, words.size() - 1);
  std::uniform_int_distribution<int> edits(0, 2);
  std::uniform_int_distribution<size_t> letter(0, 4);
  std::string out;
  for (size_t t = tokens(rng); t > 0; --t) {
    std::string w = words[pick(rng)];
    for (int e = edits(rng); e > 0 && w.size() < 5; --e) {
      const size_t at = std::uniform_int_distribution<size_t>(0, w.size())(rng);
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(at), "abcde"[letter(rng)]);
    }
    out += (out.empty() ? "" : " ") + w;
  }
  return out;
}

plans::PlanLibrary RandomLibrary(std::mt19937_64& rng, size_t max_events) {
  std::uniform_int_distribution<size_t> count(1, max_events);
  const size_t n = count(rng);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution rare(0.3);
  const std::vector<std::string> acts = {"ask", "tell", "want"};
  std::uniform_int_distribution<size_t> act(0, acts.size() - 1);

  std::vector<plans::EventSchema> events;
  for (size_t i = 0; i < n; ++i) {
    plans::EventSchema e;
    e.name = "e" + std::string(1, static_cast<char>('a' + i / 26)) +
             std::string(1, static_cast<char>('a' + i % 26));
    if (coin(rng)) {
      std::string trigger = "(*" + acts[act(rng)] + " (:agent ?a)";
      if (coin(rng)) trigger += " (:theme ?t)";
      if (rare(rng)) trigger += " (:extra ?x)";
      e.trigger = ParseFrame(trigger + ")");
    }
    if (rare(rng) || (!e.trigger && coin(rng))) {
      std::string goal = "(*intend (:agent ?a)";
      if (coin(rng)) goal += " (:theme (*about (:topic ?t)))";
      if (coin(rng)) goal += " (:extra ?x)";
      e.goal = ParseFrame(goal + ")");
    }
    events.push_back(std::move(e));
  }
  // Links only go from lower to higher index per kind, so each kind is acyclic.
  std::vector<plans::Link> links;
  std::set<std::pair<std::string, std::string>> used;
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  const size_t link_count = n + n / 2;
  for (size_t k = 0; k < link_count && n > 1; ++k) {
    size_t a = pick(rng);
    size_t b = pick(rng);
    if (a == b) continue;
    const bool is_a = coin(rng);
    if (a > b) std::swap(a, b);
    if (!used.insert({events[a].name, events[b].name}).second) continue;
    links.push_back({events[a].name, events[b].name,
                     is_a ? plans::LinkKind::kIsA : plans::LinkKind::kPartOf});
  }
  return plans::PlanLibrary("random", std::move(events), std::move(links));
}

Frame RandomObservation(std::mt19937_64& rng) {
  const std::vector<std::string> acts = {"ask", "tell", "want"};
  std::uniform_int_distribution<size_t> act(0, acts.size() - 1);
  std::bernoulli_distribution coin(0.5);
  std::string text = "(*" + acts[act(rng)] + "-1 (:agent *i-1)";
  if (coin(rng)) text += " (:theme *topic-1)";
  if (coin(rng)) text += " (:extra \"x\")";
  text += " (:situation *place-1))";
  return ParseFrame(text, NameMode::kNumbered);
}

}  // namespace situ::oracle
