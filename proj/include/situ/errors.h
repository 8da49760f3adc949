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

#ifndef SITU_ERRORS_H_
#define SITU_ERRORS_H_

#include <stdexcept>
#include <string>

namespace situ {

// Base class for every error the engine throws. Normal "nothing found"
// outcomes (no code in a scanline, unknown situation, no parse) are returned
// as values and never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument outside its documented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent asset file. The message names the offending key.
class LoadError : public Error {
 public:
  using Error::Error;
};

// A context switch that names an asset the store cannot resolve.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Text that does not follow one of the small asset syntaxes.
class SyntaxError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  EmptyInputError() : Error("empty input") {}
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace situ

#endif  // SITU_ERRORS_H_
