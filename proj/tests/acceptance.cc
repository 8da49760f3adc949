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
// Acceptance suite: one PASS/FAIL line per headline requirement. Exit
// status is the number of failing lines.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.h"
#include "situ/colorcode.h"
#include "situ/console.h"
#include "situ/dialogue.h"
#include "situ/recognizer.h"
#include "situ/service.h"
#include "test_support.h"

namespace situ {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

std::string ScriptPath(const std::string& name) {
  return (testing::SourceDir() / "scripts" / (name + ".script")).string();
}

bool Contains(const std::vector<service::TurnRecord>& records, const std::string& text) {
  for (const auto& r : records) {
    if (r.spoken.find(text) != std::string::npos) return true;
  }
  return false;
}

Outcome LibraryReplay() {
  const auto start = Clock::now();
  service::SessionManager sessions(testing::AssetDir());
  const auto report = service::Replay(sessions, service::ReadScript(ScriptPath("library")));
  const double elapsed = Seconds(start);
  bool pass = report.ok() && elapsed < 5.0;
  for (const char* phrase : {"Which area do you want?", "Please take this route.",
                             "Which kind of language", "Natural language is",
                             "on the third shelf", "Object-oriented languages",
                             "Mario Tokoro is", "fifth from the right on the top shelf"}) {
    pass = pass && Contains(report.records, phrase);
  }
  return {pass, std::to_string(report.records.size()) + " turns, " +
                    std::to_string(report.checked) + " checks, " +
                    std::to_string(report.mismatches.size()) + " mismatches, " +
                    Fixed(elapsed, 3) + " s (limit 5 s)"};
}

Outcome RestaurantReplay() {
  service::SessionManager sessions(testing::AssetDir());
  const auto report = service::Replay(sessions, service::ReadScript(ScriptPath("restaurant")));
  bool pass = report.ok() && !report.records.empty();
  if (pass) {
    const auto& greeting = report.records.front();
    pass = greeting.spoken ==
               "Welcome to `Maxim's de Paris.' We are ready to tell you about the following "
               "items" &&
           greeting.display.ItemTexts() ==
               std::vector<std::string>{"Menu and Price",
                                        "Special Dishes recommended by the Chef", "Wine List"};
  }
  return {pass, std::to_string(report.checked) + " checks, " +
                    std::to_string(report.mismatches.size()) + " mismatches"};
}

Outcome FrameReproduction() {
  const Frame want = ParseFrame(R"((*want-1
   (:agent *i-1)
   (:theme (*learn-1 (:agent *i-1) (:theme *computer-science-1)))
   (:situation *library-front-1)))",
                                NameMode::kNumbered);
  const Frame intention = ParseFrame(R"((*intend-to-know-1
   (:agent *speaker-1)
   (:theme (*location-of-bookshelf-1 (:area *computer-science-1)))))",
                                     NameMode::kNumbered);
  auto world = testing::BundledWorld("library");
  auto out = dialogue::Step(dialogue::InitialState(world),
                            SituationEvent{EventKind::kEnter, ObjectId(1), 1});
  out = dialogue::Step(std::move(out.state), dialogue::Utterance{"I want to learn computer science"});
  const auto& state = out.state;
  if (state.frame_history.empty() || state.beliefs.committed.empty()) {
    return {false, "no frame or intention recorded"};
  }
  const bool frame_ok = StructurallyEqual(state.frame_history.back(), want);
  const bool intention_ok = StructurallyEqual(state.beliefs.committed.back().frame, intention);
  return {frame_ok && intention_ok,
          std::string("frame ") + (frame_ok ? "equal" : "differs: " +
                                                        ToString(state.frame_history.back())) +
              ", intention " +
              (intention_ok ? "equal" : "differs: " + ToString(state.beliefs.committed.back().frame))};
}

Outcome Codec() {
  using namespace colorcode;
  size_t exact = 0;
  for (uint32_t id = 0; id <= ObjectId::kMax; ++id) {
    const auto d = DecodeScanline(RenderScanline(EncodeId(ObjectId(id)), 360));
    exact += d && d->value() == id;
  }

  std::mt19937 rng(64);
  std::vector<uint32_t> sample;
  while (sample.size() < 64) sample.push_back(std::uniform_int_distribution<uint32_t>(0, 4095)(rng));
  size_t noisy = 0;
  for (uint32_t id : sample) {
    for (uint64_t seed = 0; seed < 100; ++seed) {
      const auto d = DecodeScanline(RenderScanline(EncodeId(ObjectId(id)), 360, {40, 0.2, seed}));
      noisy += d && d->value() == id;
    }
  }
  const double noisy_rate = static_cast<double>(noisy) / 6400.0;

  size_t flips = 0;
  size_t rejected = 0;
  for (uint32_t id = 0; id <= ObjectId::kMax; ++id) {
    const ColorCode code = EncodeId(ObjectId(id));
    const Scanline clean = RenderScanline(code, 360);
    for (int s = 0; s < kStripeCount; ++s) {
      Scanline line = clean;
      const Rgb other = code[s] == Stripe::kRed ? kBluePixel : kRedPixel;
      for (size_t x = s * 20; x < (s + 1) * 20u; ++x) line.pixels[x] = other;
      ++flips;
      rejected += !DecodeScanline(line).has_value();
    }
  }

  const Scanline wide = RenderScanline(EncodeId(ObjectId(1135)), 640, {40, 0.2, 5});
  const auto start = Clock::now();
  int frames = 0;
  while (Seconds(start) < 0.5) {
    DecodeScanline(wide);
    ++frames;
  }
  const double rate = frames / Seconds(start);

  const bool pass = exact == 4096 && noisy_rate >= 0.99 && rejected == flips && rate >= 10.0;
  return {pass, "round trip " + std::to_string(exact) + "/4096, noisy " +
                    Fixed(100.0 * noisy_rate, 2) + "% (>= 99%), flips rejected " +
                    std::to_string(rejected) + "/" + std::to_string(flips) + ", " +
                    Fixed(rate, 0) + " decodes/s (>= 10)"};
}

Outcome SituatedLexicon() {
  auto world = testing::BundledWorld("library");
  const Lexicon& global = world->assets()->Global();
  std::ifstream in(testing::AssetDir() / "corpus" / "corrupted.tsv");
  std::string line;
  size_t total = 0, situated_ok = 0, global_ok = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string id, corrupted, clean;
    std::getline(fields, id, '\t');
    std::getline(fields, corrupted, '\t');
    std::getline(fields, clean, '\t');
    const SituationEntry* entry = world->Lookup(ObjectId(static_cast<uint32_t>(std::stoul(id))));
    if (entry == nullptr) return {false, "corpus names unknown situation " + id};
    const Lexicon& local = world->assets()->Dictionary(entry->dictionary_id);
    std::string expected;
    for (const auto& w : recognizer::Tokenize(clean)) expected += (expected.empty() ? "" : " ") + w;
    ++total;
    situated_ok += recognizer::Recognize(corrupted, local).hypotheses[0].Text() == expected;
    global_ok += recognizer::Recognize(corrupted, global).hypotheses[0].Text() == expected;
  }
  const double global_perplexity = recognizer::Perplexity(global);
  double worst = 0.0;
  for (const Lexicon* dict : world->assets()->Dictionaries()) {
    worst = std::max(worst, recognizer::Perplexity(*dict));
  }
  const bool pass = total == 50 && situated_ok >= global_ok && worst < 0.5 * global_perplexity;
  return {pass, "top-1 situated " + std::to_string(situated_ok) + "/" + std::to_string(total) +
                    " vs global " + std::to_string(global_ok) + "/" + std::to_string(total) +
                    ", max situated perplexity " + Fixed(worst, 0) + " < 0.5 x " +
                    Fixed(global_perplexity, 0)};
}

Outcome OracleSuites() {
  std::mt19937_64 rng(4242);
  const int instances = 250;
  int recognizer_ok = 0;
  for (int i = 0; i < instances; ++i) {
    const Lexicon lexicon = oracle::RandomLexicon(rng, 50);
    const std::string raw = oracle::RandomUtterance(rng, lexicon, 8);
    const size_t n = 1 + rng() % 8;
    recognizer_ok += recognizer::Recognize(raw, lexicon, n).hypotheses ==
                     oracle::ExhaustiveRecognize(raw, lexicon, n).hypotheses;
  }
  int plans_ok = 0;
  for (int i = 0; i < instances; ++i) {
    const plans::PlanLibrary lib = oracle::RandomLibrary(rng, 20);
    const Frame frame = oracle::RandomObservation(rng);
    plans::BeliefModel beliefs;
    if (rng() % 2 == 0) {
      plans::Intention prior;
      prior.explanation = {lib.events()[rng() % lib.events().size()].name};
      beliefs.committed.push_back(prior);
    }
    const auto expected = oracle::EnumerateExplanations(frame, lib, beliefs);
    const auto actual = plans::RecognizeIntention(frame, lib, beliefs);
    bool same = expected.size() == actual.size();
    for (size_t k = 0; same && k < actual.size(); ++k) {
      same = actual[k].explanation == expected[k].path &&
             actual[k].specificity == expected[k].specificity &&
             std::abs(actual[k].preference - expected[k].preference) < 1e-12;
    }
    plans_ok += same;
  }
  return {recognizer_ok == instances && plans_ok == instances,
          "recognizer " + std::to_string(recognizer_ok) + "/" + std::to_string(instances) +
              ", plans " + std::to_string(plans_ok) + "/" + std::to_string(instances)};
}

Outcome DeicticSuite() {
  using dialogue::Step;
  using dialogue::Utterance;
  auto office = testing::BundledWorld("office");
  auto cal = Step(dialogue::InitialState(office, ParseDate("1995-04-24")),
                  SituationEvent{EventKind::kLookAt, ObjectId(31), 1});
  cal = Step(std::move(cal.state), Utterance{"What about tomorrow?"});
  std::string tomorrow;
  if (!cal.state.frame_history.empty()) {
    if (const auto* lit = std::get_if<Literal>(cal.state.frame_history.back().Find("theme"))) {
      tomorrow = lit->text;
    }
  }

  auto library = testing::BundledWorld("library");
  auto book = Step(dialogue::InitialState(library),
                   SituationEvent{EventKind::kLookAt, ObjectId(1135), 1});
  book = Step(std::move(book.state), Utterance{"Tell me about the author"});
  const size_t shown = book.display.items.size();
  const auto fourth = Step(book.state, Utterance{"Where is the fourth book on this publication list?"});
  std::string fourth_referent;
  if (!fourth.state.frame_history.empty()) {
    fourth_referent = ConceptKey(*fourth.state.frame_history.back().Find("theme"));
  }
  const auto sixth = Step(book.state, Utterance{"Where is the sixth book on this publication list?"});

  const bool tomorrow_ok = tomorrow == "1995-04-25";
  const bool fourth_ok = shown == 5 && fourth_referent == book.display.items[3].referent &&
                         fourth.spoken.find("fifth from the right on the top shelf") !=
                             std::string::npos;
  const bool sixth_ok = sixth.status == dialogue::TurnStatus::kClarification &&
                        sixth.template_name == "out-of-range";
  return {tomorrow_ok && fourth_ok && sixth_ok,
          "tomorrow -> " + tomorrow + ", 4 of " + std::to_string(shown) + " -> " +
              fourth_referent + ", 6 of " + std::to_string(shown) + " -> " +
              sixth.template_name};
}

}  // namespace
}  // namespace situ

int main() {
  const std::vector<std::pair<std::string, std::function<situ::Outcome()>>> criteria = {
      {"library scenario replay", situ::LibraryReplay},
      {"restaurant scenario replay", situ::RestaurantReplay},
      {"frame and intention reproduction", situ::FrameReproduction},
      {"color-code codec", situ::Codec},
      {"situated lexicon advantage", situ::SituatedLexicon},
      {"oracle equivalence", situ::OracleSuites},
      {"deictic grounding", situ::DeicticSuite},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    situ::Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail << "\n";
  }
  return failures;
}
