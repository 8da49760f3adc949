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
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "situ/errors.h"
#include "situ/plans.h"
#include "test_support.h"

namespace situ::plans {
namespace {

constexpr char kWantListing[] = R"((*want-1
   (:agent *i-1)
   (:theme (*learn-1
              (:agent *i-1)
              (:theme *computer-science-1)))
   (:situation *library-front-1)
))";

constexpr char kIntentionListing[] = R"((*intend-to-know-1
   (:agent *speaker-1)
   (:theme (*location-of-bookshelf-1
              (:area *computer-science-1)))
))";

PlanLibrary Library(const std::string& json) { return ParsePlanLibrary(json); }

TEST_CASE("plan library load errors") {
  CHECK_THROWS_AS(Library(R"j({"name": "x", "events": [{"name": "a"}, {"name": "a"}]})j"),
                  LoadError);
  CHECK_THROWS_AS(Library(R"j({"name": "x", "events": [{"name": "a"}],
                             "links": [["a", "b", "is_a"]]})j"),
                  LoadError);
  CHECK_THROWS_AS(Library(R"j({"name": "x", "events": [{"name": "a"}, {"name": "b"}],
                             "links": [["a", "b", "is_a"], ["b", "a", "is_a"]]})j"),
                  LoadError);
  CHECK_THROWS_AS(Library(R"j({"name": "x", "events": [{"name": "a"}, {"name": "b"}],
                             "links": [["a", "b", "sibling"]]})j"),
                  LoadError);
  CHECK_THROWS_AS(Library(R"j({"name": "x", "events": [{"name": "a", "goal": "(*g"}]})j"),
                  LoadError);
  CHECK_THROWS_AS(Library("[1, 2"), LoadError);
  // One cycle per kind is needed; mixing kinds is allowed.
  CHECK_NOTHROW(Library(R"j({"name": "x", "events": [{"name": "a"}, {"name": "b"}],
                           "links": [["a", "b", "is_a"], ["b", "a", "part_of"]]})j"));
}

TEST_CASE("bundled libraries") {
  const auto world = testing::BundledWorld("library");
  const PlanLibrary& shelf = world->assets()->Plans("comp-sci-bookshelf-plan");
  for (const char* child : {"search-book", "read-book", "study"}) {
    INFO(child);
    const auto parents = shelf.Parents(child);
    REQUIRE(parents.size() == 1);
    CHECK(parents[0]->parent == "study-computer-science");
    CHECK(parents[0]->kind == LinkKind::kPartOf);
  }
  const PlanLibrary& front = world->assets()->Plans("library-front-plan");
  bool derives = false;
  for (const auto& e : front.events()) {
    derives = derives || (e.goal && e.goal->type == "intend-to-know");
  }
  CHECK(derives);
}

TEST_CASE("paper frame yields the paper intention") {
  const auto world = testing::BundledWorld("library");
  const PlanLibrary& front = world->assets()->Plans("library-front-plan");
  const Frame frame = ParseFrame(kWantListing, NameMode::kNumbered);
  const auto intentions = RecognizeIntention(frame, front, {});
  REQUIRE_FALSE(intentions.empty());
  const Frame expected = ParseFrame(kIntentionListing, NameMode::kNumbered);
  CHECK(ToString(StripCounters(intentions[0].frame)) == ToString(StripCounters(expected)));
  CHECK(intentions[0].event() == "learn-area");
  double total = 0.0;
  for (const auto& i : intentions) total += i.preference;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("no trigger, no intention; unsituated frame is a contract error") {
  const auto world = testing::BundledWorld("library");
  const PlanLibrary& front = world->assets()->Plans("library-front-plan");
  CHECK(RecognizeIntention(ParseFrame("(*sing (:situation *x-1))", NameMode::kNumbered), front,
                           {})
            .empty());
  CHECK_THROWS_AS(RecognizeIntention(ParseFrame("(*want)"), front, {}), ContractError);
}

TEST_CASE("deeper explanation ranks first") {
  const PlanLibrary lib = Library(R"j({"name": "x", "events": [
      {"name": "ask", "trigger": "(*ask (:agent ?a))"},
      {"name": "shallow", "trigger": "(*ask (:agent ?a))", "goal": "(*g1 (:agent ?a))"},
      {"name": "mid"},
      {"name": "deep", "goal": "(*g2 (:agent ?a))"}],
    "links": [["ask", "mid", "is_a"], ["mid", "deep", "part_of"]]})j");
  const Frame frame = ParseFrame("(*ask-1 (:agent *i-1) (:situation *s-1))", NameMode::kNumbered);
  const auto intentions = RecognizeIntention(frame, lib, {});
  REQUIRE(intentions.size() == 2);
  CHECK(intentions[0].explanation == std::vector<std::string>{"ask", "mid", "deep"});
  CHECK(intentions[0].specificity == 3.0);
  CHECK(intentions[1].explanation == std::vector<std::string>{"shallow"});
  CHECK(intentions[0].frame.type == "g2");
}

TEST_CASE("ranking equals exhaustive enumeration") {
  std::mt19937_64 rng(19950424);
  int agree = 0;
  int multi = 0;
  const int instances = 300;
  for (int i = 0; i < instances; ++i) {
    const PlanLibrary lib = oracle::RandomLibrary(rng, 20);
    const Frame frame = oracle::RandomObservation(rng);
    BeliefModel beliefs;
    if (rng() % 2 == 0 && !lib.events().empty()) {
      Intention prior;
      prior.explanation = {lib.events()[rng() % lib.events().size()].name};
      beliefs.committed.push_back(prior);
    }
    const auto expected = oracle::EnumerateExplanations(frame, lib, beliefs);
    const auto actual = RecognizeIntention(frame, lib, beliefs);
    multi += expected.size() > 1;
    bool same = expected.size() == actual.size();
    for (size_t k = 0; same && k < actual.size(); ++k) {
      same = actual[k].explanation == expected[k].path &&
             actual[k].specificity == expected[k].specificity &&
             std::abs(actual[k].preference - expected[k].preference) < 1e-12;
    }
    INFO("instance " << i << ": " << ToString(frame));
    CHECK(same);
    agree += same;
  }
  CHECK(agree == instances);
  // The generator must produce real competition between explanations.
  CHECK(multi >= instances / 5);
}

TEST_CASE("speaker rewrite and counter stripping") {
  const Frame f = ParseFrame("(*tell-2 (:agent *i-1) (:theme (*i-1 (:x *i-3))))",
                             NameMode::kNumbered);
  const Frame r = RewriteSpeaker(f);
  CHECK(ToString(r) == "(*tell-2 (:agent *speaker-1) (:theme (*speaker-1 (:x *speaker-3))))");
  CHECK(ToString(StripCounters(r)) == "(*tell (:agent *speaker) (:theme (*speaker (:x *speaker))))");
}

TEST_CASE("belief updates") {
  const auto world = testing::BundledWorld("library");
  const PlanLibrary& front = world->assets()->Plans("library-front-plan");
  const Frame frame = ParseFrame(kWantListing, NameMode::kNumbered);
  const auto intentions = RecognizeIntention(frame, front, {});
  REQUIRE_FALSE(intentions.empty());

  BeliefModel model = UpdateBeliefs({}, intentions[0], frame, {});
  CHECK(model.committed.size() == 1);
  REQUIRE(model.history.size() == 1);
  CHECK(model.history[0].index == 1);
  REQUIRE(model.open_goals.size() == 1);
  CHECK(model.open_goals[0].type == "knows-location");

  const Frame second = ParseFrame("(*select-1 (:agent *i-1) (:theme *physics-1) "
                                  "(:situation *library-front-1))",
                                  NameMode::kNumbered);
  const auto next = RecognizeIntention(second, front, model);
  REQUIRE_FALSE(next.empty());
  model = UpdateBeliefs(model, next[0], second, {});
  REQUIRE(model.history.size() == 2);
  CHECK(model.history[0].index < model.history[1].index);
  CHECK(model.history[0].frame == frame);
  CHECK(model.history[1].frame == second);

  const Frame fact = ParseFrame("(*knows-location (:agent *speaker) (:area *computer-science))");
  const std::vector<Frame> facts{fact};
  const BeliefModel satisfied = UpdateBeliefs({}, intentions[0], frame, facts);
  CHECK(satisfied.open_goals.empty());
}

TEST_CASE("recent commitment adds coherence") {
  const PlanLibrary lib = Library(R"j({"name": "x", "events": [
      {"name": "a", "trigger": "(*ask (:agent ?a))", "goal": "(*ga (:agent ?a))"},
      {"name": "b", "trigger": "(*ask (:agent ?a))", "goal": "(*gb (:agent ?a))"}]})j");
  const Frame frame = ParseFrame("(*ask-1 (:agent *i-1) (:situation *s-1))", NameMode::kNumbered);
  CHECK(RecognizeIntention(frame, lib, {})[0].event() == "a");
  BeliefModel beliefs;
  Intention prior;
  prior.explanation = {"b"};
  beliefs.committed.push_back(prior);
  const auto ranked = RecognizeIntention(frame, lib, beliefs);
  CHECK(ranked[0].event() == "b");
  CHECK(ranked[0].specificity == ranked[1].specificity + 1.0);
}

}  // namespace
}  // namespace situ::plans
