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
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "situ/console.h"
#include "situ/errors.h"
#include "situ/http_api.h"
#include "situ/service.h"
#include "test_support.h"

namespace situ::service {
namespace {

using nlohmann::json;

std::string RenderedRaster(uint32_t id, size_t rows = 3) {
  ppm::Image image;
  image.width = 360;
  image.height = rows;
  for (size_t y = 0; y < rows; ++y) {
    const auto line = colorcode::RenderScanline(colorcode::EncodeId(ObjectId(id)), 360,
                                                {20, 0.1, 7 + y});
    image.pixels.insert(image.pixels.end(), line.pixels.begin(), line.pixels.end());
  }
  return ppm::Serialize(image);
}

std::string GrayRaster() {
  ppm::Image image;
  image.width = 64;
  image.height = 2;
  image.pixels.assign(128, colorcode::Rgb{120, 120, 120});
  return ppm::Serialize(image);
}

TEST_CASE("session creation") {
  SessionManager sessions(testing::AssetDir());
  CHECK(sessions.Worlds() == std::vector<std::string>{"library", "office", "restaurant"});
  const std::string a = sessions.Create("library");
  const std::string b = sessions.Create("library");
  CHECK(a != b);
  const json state = sessions.State(a);
  CHECK(state["situation"]["label"] == "Library front");
  CHECK(state["situation"]["entered"] == false);
  CHECK(state["turn"] == 0);
  CHECK(state["transcript"].empty());

  const std::string r = sessions.Create("restaurant");
  CHECK(sessions.State(r)["situation"]["label"] == "Maxim's de Paris signboard");

  CHECK_THROWS_AS(sessions.Create("nope"), NotFoundError);
  CHECK_THROWS_AS(sessions.Create("../library"), NotFoundError);
  CHECK_THROWS_AS(sessions.Create("library", "tomorrow"), SyntaxError);
  CHECK(sessions.State(sessions.Create("office", "1995-04-24"))["date"] == "1995-04-24");
}

TEST_CASE("unknown session") {
  SessionManager sessions(testing::AssetDir());
  CHECK_THROWS_AS(sessions.Utterance("s0", "hi"), NotFoundError);
  CHECK_THROWS_AS(sessions.Event("s0", EventKind::kEnter, ObjectId(1)), NotFoundError);
  CHECK_THROWS_AS(sessions.State("s0"), NotFoundError);
  CHECK_THROWS_AS(sessions.Scan("s0", GrayRaster()), NotFoundError);
}

TEST_CASE("turns, state and transcript") {
  SessionManager sessions(testing::AssetDir());
  const std::string id = sessions.Create("library");
  const TurnRecord greet = sessions.Event(id, EventKind::kEnter, ObjectId(1));
  CHECK(greet.turn == 1);
  CHECK(greet.status == "greeting");
  CHECK(sessions.State(id)["display"] == ToJson(greet.display));

  const TurnRecord route = sessions.Utterance(id, "computer science");
  CHECK(route.spoken == "Please take this route.");
  const TurnRecord empty = sessions.Utterance(id, "");
  CHECK(empty.status == "prompt_again");

  const json before = sessions.State(id);
  CHECK(before["turn"] == 3);
  CHECK(sessions.State(id) == before);
  CHECK(before["display"] == ToJson(empty.display));
  CHECK(before["transcript"].size() == 3);
  CHECK(sessions.State(id, 1)["transcript"].size() == 1);

  const json record = ToJson(route);
  CHECK(record["input"] == json{{"kind", "utterance"}, {"text", "computer science"}});
  CHECK(record["display"]["lines"][0] == "Route to the computer science bookshelf");
  CHECK(record["display"]["items"][3]["text"] == "Bookshelf #11: Computer science");

  const TurnRecord same = sessions.Event(id, EventKind::kEnter, ObjectId(1));
  CHECK(same.status == "no_op");
  const TurnRecord unknown = sessions.Event(id, EventKind::kEnter, ObjectId(4000));
  CHECK(unknown.spoken == "No code recognized.");
  CHECK(sessions.Transcript(id).size() == 5);
}

TEST_CASE("bookshelf greeting and corrected author question") {
  SessionManager sessions(testing::AssetDir());
  const std::string id = sessions.Create("library");
  CHECK(sessions.Event(id, EventKind::kEnter, ObjectId(11)).spoken ==
        "Here we have books on computer science. What are you looking for?");
  sessions.Event(id, EventKind::kLookAt, ObjectId(1135));
  const TurnRecord r = sessions.Utterance(id, "tel me abut the author");
  CHECK(r.status == "answer");
  CHECK(r.spoken.rfind("Mario Tokoro is a computer scientist", 0) == 0);
  CHECK(r.display.title == "Publications of Mario Tokoro");
}

TEST_CASE("scanning rasters") {
  SessionManager sessions(testing::AssetDir());
  const std::string id = sessions.Create("library");
  const ScanResult book = sessions.Scan(id, RenderedRaster(1135));
  REQUIRE(book.decoded.has_value());
  CHECK(book.decoded->value() == 1135);
  REQUIRE(book.record.has_value());
  CHECK(book.record->spoken ==
        "The title of this is `Object-oriented languages' and this was written by Mario Tokoro");
  CHECK(book.record->input_kind == "scanline");
  CHECK(book.turn == 1);

  const json before = sessions.State(id);
  const ScanResult gray = sessions.Scan(id, GrayRaster());
  CHECK_FALSE(gray.decoded.has_value());
  CHECK_FALSE(gray.record.has_value());
  CHECK(gray.turn == 1);
  CHECK(sessions.State(id) == before);

  const std::string raster = RenderedRaster(1135);
  CHECK_THROWS_AS(sessions.Scan(id, raster.substr(0, raster.size() / 2)), SyntaxError);
}

TEST_CASE("raster majority vote") {
  ppm::Image image;
  image.width = 360;
  auto add = [&](uint32_t id) {
    const auto line = colorcode::RenderScanline(colorcode::EncodeId(ObjectId(id)), 360);
    image.pixels.insert(image.pixels.end(), line.pixels.begin(), line.pixels.end());
    ++image.height;
  };
  add(11);
  add(113);
  add(113);
  CHECK(DecodeRaster(image)->value() == 113);
  add(11);
  CHECK(DecodeRaster(image)->value() == 11);
}

TEST_CASE("concurrent requests to one session are serialized") {
  SessionManager sessions(testing::AssetDir());
  const std::string id = sessions.Create("library");
  sessions.Event(id, EventKind::kEnter, ObjectId(1));
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 20; ++i) {
        if ((t + i) % 5 == 0) {
          sessions.State(id);
        } else {
          sessions.Utterance(id, i % 2 ? "physics" : "computer science");
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  const auto transcript = sessions.Transcript(id);
  for (size_t i = 0; i < transcript.size(); ++i) CHECK(transcript[i].turn == i + 1);
  size_t utterances = 0;
  for (int t = 0; t < 8; ++t) {
    for (int i = 0; i < 20; ++i) utterances += (t + i) % 5 != 0;
  }
  CHECK(transcript.size() == utterances + 1);
}

TEST_CASE("independent sessions run in parallel") {
  SessionManager sessions(testing::AssetDir());
  std::vector<std::string> ids;
  for (int i = 0; i < 6; ++i) ids.push_back(sessions.Create(i % 2 ? "restaurant" : "library"));
  std::vector<std::thread> threads;
  for (const std::string& id : ids) {
    threads.emplace_back([&sessions, id] {
      for (int i = 0; i < 10; ++i) sessions.Utterance(id, "hello");
    });
  }
  for (auto& th : threads) th.join();
  for (const std::string& id : ids) CHECK(sessions.Transcript(id).size() == 10);
}

TEST_CASE("turn log is one JSON object per line") {
  const auto path = std::filesystem::temp_directory_path() / "situ_service_test_log.jsonl";
  std::filesystem::remove(path);
  {
    SessionManager sessions(testing::AssetDir(), path);
    const std::string id = sessions.Create("restaurant");
    sessions.Event(id, EventKind::kLookAt, ObjectId(21));
    sessions.Utterance(id, "Tell me about the menu");
  }
  std::ifstream in(path);
  std::string line;
  std::vector<json> lines;
  while (std::getline(in, line)) lines.push_back(json::parse(line));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0]["turn"] == 1);
  CHECK(lines[1]["spoken"] == "Ok, here you are.");
  CHECK(lines[1].contains("session"));
  std::filesystem::remove(path);
}

TEST_CASE("REPL and API produce the same transcript") {
  SessionManager sessions(testing::AssetDir());
  const std::string via_repl = sessions.Create("library");
  const std::string via_api = sessions.Create("library");
  std::istringstream in(":enter 1\nComputer science\n:enter 11\nA book on language\n"
                        ":look 1135\nTell me about the author\n:bogus\n:state\n:quit\nignored\n");
  std::ostringstream out;
  RunRepl(sessions, via_repl, in, out);
  CHECK(out.str().find("! unknown command :bogus") != std::string::npos);
  CHECK(out.str().find("< Please take this route.\n| Route to") != std::string::npos);

  sessions.Event(via_api, EventKind::kEnter, ObjectId(1));
  sessions.Utterance(via_api, "Computer science");
  sessions.Event(via_api, EventKind::kEnter, ObjectId(11));
  sessions.Utterance(via_api, "A book on language");
  sessions.Event(via_api, EventKind::kLookAt, ObjectId(1135));
  sessions.Utterance(via_api, "Tell me about the author");

  const auto a = sessions.Transcript(via_repl);
  const auto b = sessions.Transcript(via_api);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(ToJson(a[i]) == ToJson(b[i]));
}

TEST_CASE("scripts") {
  const Script script = ParseScript(
      "# demo\nworld restaurant\n> look 21\n< Welcome to `Maxim's de Paris.' We are ready "
      "to tell you about the following items\n| Maxim's de Paris\n| 1. Menu and Price\n"
      "| 2. Special Dishes recommended by the Chef\n| 3. Wine List\n> say Wine list\n");
  CHECK(script.world == "restaurant");
  REQUIRE(script.steps.size() == 2);
  CHECK(script.steps[0].kind == ScriptStep::Kind::kLook);
  CHECK(script.steps[0].expected_display.size() == 4);
  SessionManager sessions(testing::AssetDir());
  const ReplayReport report = Replay(sessions, script);
  CHECK(report.ok());
  CHECK(report.checked == 2);

  Script wrong = script;
  wrong.steps[0].expected_spoken = "Hello.";
  const ReplayReport bad = Replay(sessions, wrong);
  CHECK_FALSE(bad.ok());
  CHECK(bad.mismatches.size() == 1);

  CHECK_THROWS_AS(ParseScript("> say hi\n"), SyntaxError);
  CHECK_THROWS_AS(ParseScript("world library\n< orphan\n"), SyntaxError);
  CHECK_THROWS_AS(ParseScript("world library\n> fly 3\n"), SyntaxError);
  CHECK_THROWS_AS(ParseScript("world library\n> enter x\n"), SyntaxError);
}

TEST_CASE("bundled scripts replay") {
  SessionManager sessions(testing::AssetDir());
  for (const char* name : {"library", "restaurant", "calendar"}) {
    INFO(name);
    const ReplayReport report =
        Replay(sessions, ReadScript((testing::SourceDir() / "scripts" /
                                     (std::string(name) + ".script")).string()));
    for (const auto& m : report.mismatches) INFO(m);
    CHECK(report.ok());
  }
}

class LiveServer {
 public:
  LiveServer() : sessions_(testing::AssetDir()) {
    RegisterRoutes(server_, sessions_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LiveServer() {
    server_.stop();
    thread_.join();
  }
  httplib::Client Client() const { return httplib::Client("127.0.0.1", port_); }

 private:
  SessionManager sessions_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

json Parse(const httplib::Result& r) { return json::parse(r->body); }

TEST_CASE("HTTP API") {
  LiveServer server;
  httplib::Client client = server.Client();

  auto worlds = client.Get("/worlds");
  REQUIRE(worlds);
  CHECK(worlds->status == 200);
  CHECK(Parse(worlds)["worlds"].size() == 3);

  auto created = client.Post("/sessions", R"({"world": "library"})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  const std::string id = Parse(created)["session"];
  CHECK(Parse(created)["turn"] == 0);
  const std::string base = "/sessions/" + id;

  auto enter = client.Post(base + "/event", R"({"kind": "enter", "target": 1})",
                           "application/json");
  REQUIRE(enter);
  CHECK(enter->status == 200);
  CHECK(Parse(enter)["turn"] == 1);
  CHECK(Parse(enter)["status"] == "greeting");

  auto said = client.Post(base + "/utterance", R"({"text": "Computer science"})",
                          "application/json");
  REQUIRE(said);
  CHECK(Parse(said)["spoken"] == "Please take this route.");

  auto scan = client.Post(base + "/scanline", RenderedRaster(1135), "image/x-portable-pixmap");
  REQUIRE(scan);
  CHECK(scan->status == 200);
  CHECK(Parse(scan)["decoded"] == 1135);
  CHECK(Parse(scan)["turn"] == 3);

  auto gray = client.Post(base + "/scanline", GrayRaster(), "image/x-portable-pixmap");
  REQUIRE(gray);
  CHECK(gray->status == 200);
  CHECK(Parse(gray)["status"] == "no_code");
  CHECK(Parse(gray)["decoded"].is_null());
  CHECK(Parse(gray)["turn"] == 3);

  auto state = client.Get(base + "/state");
  REQUIRE(state);
  CHECK(Parse(state)["turn"] == 3);
  CHECK(Parse(state)["situation"]["id"] == 1135);
}

TEST_CASE("HTTP errors") {
  LiveServer server;
  httplib::Client client = server.Client();
  auto code_of = [](const httplib::Result& r) { return Parse(r)["error"]["code"]; };

  auto nope = client.Post("/sessions", R"({"world": "nope"})", "application/json");
  CHECK(nope->status == 404);
  CHECK(code_of(nope) == "not_found");
  auto missing = client.Get("/sessions/s99-00000000/state");
  CHECK(missing->status == 404);
  auto bad_json = client.Post("/sessions", "{", "application/json");
  CHECK(bad_json->status == 400);
  CHECK(code_of(bad_json) == "bad_request");

  const std::string id =
      Parse(client.Post("/sessions", R"({"world": "library"})", "application/json"))["session"];
  const std::string base = "/sessions/" + id;
  auto no_text = client.Post(base + "/utterance", R"({"words": 1})", "application/json");
  CHECK(no_text->status == 400);
  auto bad_kind = client.Post(base + "/event", R"({"kind": "jump", "target": 1})",
                              "application/json");
  CHECK(bad_kind->status == 400);
  auto bad_target = client.Post(base + "/event", R"({"kind": "enter", "target": 9999})",
                                "application/json");
  CHECK(bad_target->status == 400);
  const std::string raster = RenderedRaster(11);
  auto truncated = client.Post(base + "/scanline", raster.substr(0, 40), "image/x-portable-pixmap");
  CHECK(truncated->status == 400);
  auto bad_date = client.Post("/sessions", R"({"world": "library", "date": "soon"})",
                              "application/json");
  CHECK(bad_date->status == 400);
}

}  // namespace
}  // namespace situ::service
