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

// HTTP+JSON front end over SessionManager.
//
//   GET  /worlds
//   POST /sessions                  {"world": "library", "date": "1995-04-24"}
//   POST /sessions/{id}/utterance   {"text": "..."}
//   POST /sessions/{id}/event       {"kind": "enter" | "look_at", "target": 11}
//   POST /sessions/{id}/scanline    binary P6 raster
//   GET  /sessions/{id}/state
//
// Errors come back as {"error": {"code": ..., "message": ...}} with a 4xx or
// 5xx status. Responses about a session carry its "turn" counter.

#ifndef SITU_HTTP_API_H_
#define SITU_HTTP_API_H_

#include "situ/service.h"

namespace httplib {
class Server;
}

namespace situ::service {

void RegisterRoutes(httplib::Server& server, SessionManager& sessions);

}  // namespace situ::service

#endif  // SITU_HTTP_API_H_
