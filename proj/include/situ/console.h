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

// Terminal front ends: the interactive REPL and the scenario script replayer.
// Both go through SessionManager, so they run the same turn pipeline as the
// HTTP API.
//
// Script format, one directive per line ("#" starts a comment line):
//
//   world library          world to load (required, first directive)
//   date 1995-04-24        optional session date override
//   > enter 11             ENTER event
//   > look 1135            LOOK_AT event
//   > say Computer science utterance
//   < Please take this route.
//   | Route to the computer science bookshelf
//   | 1. Front desk
//
// "<" gives the expected spoken text of the preceding input. Consecutive "|"
// lines give the expected display (title, then numbered items); when present
// the display must match exactly.

#ifndef SITU_CONSOLE_H_
#define SITU_CONSOLE_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "situ/service.h"

namespace situ::service {

// "< spoken" followed by "| line" for each display line.
std::string FormatTurn(const TurnRecord& record);

// Reads commands until ":quit" or end of input. Plain lines are utterances;
// ":enter N", ":look N", ":scan FILE.ppm" and ":state" drive the session.
void RunRepl(SessionManager& sessions, const std::string& session_id,
             std::istream& in, std::ostream& out);

struct ScriptStep {
  enum class Kind { kSay, kEnter, kLook };
  Kind kind = Kind::kSay;
  std::string text;
  ObjectId target{0};
  std::optional<std::string> expected_spoken;
  std::vector<std::string> expected_display;
  int line = 0;
};

struct Script {
  std::string world;
  std::optional<std::string> date;
  std::vector<ScriptStep> steps;
};

// Throws SyntaxError with the offending line number.
Script ParseScript(std::string_view text);
Script ReadScript(const std::string& path);

struct ReplayReport {
  size_t checked = 0;
  std::vector<std::string> mismatches;
  std::vector<TurnRecord> records;

  bool ok() const { return mismatches.empty(); }
};

ReplayReport Replay(SessionManager& sessions, const Script& script);

}  // namespace situ::service

#endif  // SITU_CONSOLE_H_
