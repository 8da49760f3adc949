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

// situ-talker: serve the HTTP API, talk to a world in a terminal, or replay
// a scenario script and diff the system's replies.

#include <chrono>
#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "httplib.h"
#include "situ/console.h"
#include "situ/errors.h"
#include "situ/http_api.h"
#include "situ/service.h"

#ifndef SITU_ASSET_DIR
#define SITU_ASSET_DIR "assets"
#endif

namespace {

httplib::Server* g_server = nullptr;

void StopServer(int) {
  if (g_server != nullptr) g_server->stop();
}

int Serve(const std::string& world_dir, const std::string& host, int port,
          const std::string& log_path) {
  situ::service::SessionManager sessions(
      world_dir, log_path.empty() ? std::nullopt
                                  : std::optional<std::filesystem::path>(log_path));
  httplib::Server server;
  situ::service::RegisterRoutes(server, sessions);
  g_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  std::cerr << "situ-talker listening on " << host << ":" << port << " (worlds in "
            << world_dir << ")\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

int Repl(const std::string& world_dir, const std::string& world,
         const std::string& date) {
  situ::service::SessionManager sessions(world_dir);
  const std::string id =
      sessions.Create(world, date.empty() ? std::nullopt : std::optional(date));
  std::cout << "world " << world << ", session " << id
            << " (type :help for commands)\n";
  situ::service::RunRepl(sessions, id, std::cin, std::cout);
  return 0;
}

int Replay(const std::string& world_dir, const std::string& script_path, bool quiet) {
  const auto start = std::chrono::steady_clock::now();
  situ::service::SessionManager sessions(world_dir);
  const situ::service::Script script = situ::service::ReadScript(script_path);
  const situ::service::ReplayReport report = situ::service::Replay(sessions, script);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!quiet) {
    for (size_t i = 0; i < report.records.size(); ++i) {
      const situ::service::ScriptStep& step = script.steps[i];
      switch (step.kind) {
        case situ::service::ScriptStep::Kind::kSay:
          std::cout << "> say " << step.text << "\n";
          break;
        case situ::service::ScriptStep::Kind::kEnter:
          std::cout << "> enter " << situ::ToString(step.target) << "\n";
          break;
        case situ::service::ScriptStep::Kind::kLook:
          std::cout << "> look " << situ::ToString(step.target) << "\n";
          break;
      }
      std::cout << situ::service::FormatTurn(report.records[i]);
    }
  }
  for (const std::string& mismatch : report.mismatches) {
    std::cout << "MISMATCH " << mismatch << "\n";
  }
  std::printf("%s: %zu turns, %zu checks, %zu mismatches, %.3f s\n",
              report.ok() ? "PASS" : "FAIL", report.records.size(), report.checked,
              report.mismatches.size(), seconds);
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Situated dialogue engine"};
  app.require_subcommand(1);
  std::string world_dir = SITU_ASSET_DIR;

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_path;
  serve->add_option("--world-dir", world_dir, "Directory of *.world files");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--port", port, "Port to listen on");
  serve->add_option("--log", log_path, "Append every turn to this JSON-lines file");

  auto* repl = app.add_subcommand("repl", "Talk to a world in the terminal");
  std::string world;
  std::string date;
  repl->add_option("--world", world, "World name")->required();
  repl->add_option("--world-dir", world_dir, "Directory of *.world files");
  repl->add_option("--date", date, "Session date, YYYY-MM-DD");

  auto* replay = app.add_subcommand("replay", "Replay a scenario script");
  std::string script;
  bool quiet = false;
  auto* script_opt = replay->add_option("--script", script, "Script file");
  replay->add_option("script_file", script, "Script file")->excludes(script_opt);
  replay->add_option("--world-dir", world_dir, "Directory of *.world files");
  replay->add_flag("-q,--quiet", quiet, "Print only mismatches and the summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return Serve(world_dir, host, port, log_path);
    if (*repl) return Repl(world_dir, world, date);
    if (*replay) {
      if (script.empty()) {
        std::cerr << "error: replay needs a script file\n";
        return 2;
      }
      return Replay(world_dir, script, quiet);
    }
  } catch (const situ::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
