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

#include "situ/console.h"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "situ/errors.h"

namespace situ::service {
namespace {

std::string Trim(std::string_view text) {
  const size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const size_t end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

ObjectId ParseId(const std::string& text, int line) {
  try {
    size_t used = 0;
    const unsigned long value = std::stoul(text, &used);
    if (used != text.size() || value > ObjectId::kMax) throw std::out_of_range("id");
    return ObjectId(static_cast<uint32_t>(value));
  } catch (const std::exception&) {
    throw SyntaxError("line " + std::to_string(line) + ": bad object id '" + text + "'");
  }
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot read " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::string Quote(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) out += "\n    | " + line;
  return out;
}

}  // namespace

std::string FormatTurn(const TurnRecord& record) {
  std::string out = "< " + record.spoken + "\n";
  for (const std::string& line : record.display.Lines()) out += "| " + line + "\n";
  return out;
}

void RunRepl(SessionManager& sessions, const std::string& session_id,
             std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    const std::string command = Trim(line);
    try {
      if (command == ":quit" || command == ":q") break;
      if (command == ":help") {
        out << "text            say something\n"
               ":enter ID       enter a situation\n"
               ":look ID        look at a tagged object\n"
               ":scan FILE      scan a P6 raster for a color code\n"
               ":state          print the session state as JSON\n"
               ":quit           leave\n";
      } else if (command == ":state") {
        out << sessions.State(session_id).dump(2) << "\n";
      } else if (command.rfind(":enter ", 0) == 0) {
        out << FormatTurn(sessions.Event(session_id, EventKind::kEnter,
                                         ParseId(Trim(command.substr(7)), 0)));
      } else if (command.rfind(":look ", 0) == 0) {
        out << FormatTurn(sessions.Event(session_id, EventKind::kLookAt,
                                         ParseId(Trim(command.substr(6)), 0)));
      } else if (command.rfind(":scan ", 0) == 0) {
        const ScanResult result =
            sessions.Scan(session_id, ReadAll(Trim(command.substr(6))));
        if (result.record) {
          out << FormatTurn(*result.record);
        } else {
          out << "! No code recognized.\n";
        }
      } else if (!command.empty() && command.front() == ':') {
        out << "! unknown command " << command << " (try :help)\n";
      } else {
        out << FormatTurn(sessions.Utterance(session_id, command));
      }
    } catch (const Error& e) {
      out << "! " << e.what() << "\n";
    }
    out.flush();
  }
}

Script ParseScript(std::string_view text) {
  Script script;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> void {
    throw SyntaxError("script line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = Trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const char tag = line.front();
    // Payload after the one-character tag and one separating space.
    std::string payload = raw.substr(raw.find(tag) + 1);
    if (!payload.empty() && payload.front() == ' ') payload.erase(0, 1);
    if (tag == '>') {
      ScriptStep step;
      step.line = line_no;
      const std::string body = Trim(payload);
      const size_t space = body.find(' ');
      const std::string verb = body.substr(0, space);
      const std::string rest = space == std::string::npos ? "" : Trim(body.substr(space));
      if (verb == "say") {
        step.kind = ScriptStep::Kind::kSay;
        step.text = rest;
      } else if (verb == "enter" || verb == "look") {
        step.kind = verb == "enter" ? ScriptStep::Kind::kEnter : ScriptStep::Kind::kLook;
        step.target = ParseId(rest, line_no);
      } else {
        fail("expected 'say', 'enter' or 'look'");
      }
      script.steps.push_back(std::move(step));
    } else if (tag == '<') {
      if (script.steps.empty()) fail("expectation before any input");
      if (script.steps.back().expected_spoken) fail("second '<' for one input");
      script.steps.back().expected_spoken = payload;
    } else if (tag == '|') {
      if (script.steps.empty() || !script.steps.back().expected_spoken) {
        fail("display line before '<'");
      }
      script.steps.back().expected_display.push_back(payload);
    } else if (line.rfind("world ", 0) == 0) {
      if (!script.world.empty()) fail("world given twice");
      script.world = Trim(line.substr(6));
    } else if (line.rfind("date ", 0) == 0) {
      script.date = Trim(line.substr(5));
    } else {
      fail("unrecognized directive");
    }
  }
  if (script.world.empty()) throw SyntaxError("script names no world");
  return script;
}

Script ReadScript(const std::string& path) { return ParseScript(ReadAll(path)); }

ReplayReport Replay(SessionManager& sessions, const Script& script) {
  ReplayReport report;
  const std::string id = sessions.Create(script.world, script.date);
  for (const ScriptStep& step : script.steps) {
    TurnRecord record;
    switch (step.kind) {
      case ScriptStep::Kind::kSay:
        record = sessions.Utterance(id, step.text);
        break;
      case ScriptStep::Kind::kEnter:
        record = sessions.Event(id, EventKind::kEnter, step.target);
        break;
      case ScriptStep::Kind::kLook:
        record = sessions.Event(id, EventKind::kLookAt, step.target);
        break;
    }
    const std::string where = "line " + std::to_string(step.line);
    if (step.expected_spoken) {
      ++report.checked;
      if (record.spoken != *step.expected_spoken) {
        report.mismatches.push_back(where + ": spoken\n    expected: " +
                                    *step.expected_spoken + "\n    actual:   " +
                                    record.spoken);
      }
    }
    if (!step.expected_display.empty()) {
      ++report.checked;
      const std::vector<std::string> lines = record.display.Lines();
      if (lines != step.expected_display) {
        report.mismatches.push_back(where + ": display\n  expected:" +
                                    Quote(step.expected_display) + "\n  actual:" +
                                    Quote(lines));
      }
    }
    report.records.push_back(std::move(record));
  }
  return report;
}

}  // namespace situ::service
