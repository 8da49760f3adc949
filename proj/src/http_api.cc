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

#include "situ/http_api.h"

#include "httplib.h"
#include "situ/errors.h"

namespace situ::service {
namespace {

using nlohmann::json;

class BadRequest : public Error {
 public:
  using Error::Error;
};

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, int status, const std::string& code,
                const std::string& message) {
  Reply(res, status, {{"error", {{"code", code}, {"message", message}}}});
}

json Body(const httplib::Request& req) {
  try {
    json body = json::parse(req.body);
    if (!body.is_object()) throw BadRequest("request body must be a JSON object");
    return body;
  } catch (const json::exception& e) {
    throw BadRequest(std::string("invalid JSON body: ") + e.what());
  }
}

std::string StringField(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) {
    throw BadRequest(std::string("field '") + key + "' must be a string");
  }
  return body[key].get<std::string>();
}

// Runs a handler and maps engine errors onto HTTP statuses.
template <typename Handler>
httplib::Server::Handler Guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const NotFoundError& e) {
      ReplyError(res, 404, "not_found", e.what());
    } catch (const BadRequest& e) {
      ReplyError(res, 400, "bad_request", e.what());
    } catch (const SyntaxError& e) {
      ReplyError(res, 400, "bad_request", e.what());
    } catch (const RangeError& e) {
      ReplyError(res, 400, "bad_request", e.what());
    } catch (const LoadError& e) {
      ReplyError(res, 500, "world_load_failed", e.what());
    } catch (const std::exception& e) {
      ReplyError(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

void RegisterRoutes(httplib::Server& server, SessionManager& sessions) {
  server.Get("/worlds", Guarded([&sessions](const httplib::Request&,
                                            httplib::Response& res) {
    Reply(res, 200, {{"worlds", sessions.Worlds()}});
  }));

  server.Post("/sessions", Guarded([&sessions](const httplib::Request& req,
                                               httplib::Response& res) {
    const json body = Body(req);
    std::optional<std::string> date;
    if (body.contains("date") && !body["date"].is_null()) {
      date = StringField(body, "date");
    }
    const std::string id = sessions.Create(StringField(body, "world"), date);
    json state = sessions.State(id);
    Reply(res, 201, {{"session", id}, {"turn", 0}, {"state", std::move(state)}});
  }));

  server.Post(R"(/sessions/([^/]+)/utterance)",
              Guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
                const json body = Body(req);
                const TurnRecord record =
                    sessions.Utterance(req.matches[1], StringField(body, "text"));
                Reply(res, 200, ToJson(record));
              }));

  server.Post(R"(/sessions/([^/]+)/event)",
              Guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
                const json body = Body(req);
                const auto kind = ParseEventKind(StringField(body, "kind"));
                if (!kind) throw BadRequest("field 'kind' must be 'enter' or 'look_at'");
                if (!body.contains("target") || !body["target"].is_number_integer() ||
                    body["target"].get<int64_t>() < 0 ||
                    body["target"].get<int64_t>() > ObjectId::kMax) {
                  throw BadRequest("field 'target' must be an id in 0..4095");
                }
                const TurnRecord record = sessions.Event(
                    req.matches[1], *kind, ObjectId(body["target"].get<uint32_t>()));
                Reply(res, 200, ToJson(record));
              }));

  server.Post(R"(/sessions/([^/]+)/scanline)",
              Guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
                const ScanResult result = sessions.Scan(req.matches[1], req.body);
                if (result.record) {
                  json body = ToJson(*result.record);
                  body["decoded"] = result.decoded->value();
                  Reply(res, 200, body);
                } else {
                  Reply(res, 200, {{"turn", result.turn},
                                   {"decoded", nullptr},
                                   {"status", "no_code"},
                                   {"message", "No code recognized."}});
                }
              }));

  server.Get(R"(/sessions/([^/]+)/state)",
             Guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
               Reply(res, 200, sessions.State(req.matches[1]));
             }));
}

}  // namespace situ::service
