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

// Slot/filler frames.
//
//   (*want-1
//      (:agent *i-1)
//      (:theme (*learn-1 (:agent *i-1) (:theme *computer-science-1)))
//      (:situation *library-front-1))
//
// A frame node has a concept type ("want") and an instance counter (1).
// Counter 0 means "not numbered yet": grammar skeletons, plan goals and
// candidate parses stay unnumbered until the session commits to them.
// Patterns additionally use ?variables and <GAP> placeholders.

#ifndef SITU_FRAME_H_
#define SITU_FRAME_H_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace situ {

class Frame;

// Reference to an instance by name, e.g. *i-1 or (unnumbered) *this.
struct InstanceRef {
  std::string type;
  int counter = 0;

  friend bool operator==(const InstanceRef&, const InstanceRef&) = default;
};

struct Literal {
  std::string text;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// ?name in plan patterns.
struct Variable {
  std::string name;

  friend bool operator==(const Variable&, const Variable&) = default;
};

// <NAME> in grammar skeletons.
struct Gap {
  std::string name;

  friend bool operator==(const Gap&, const Gap&) = default;
};

// Owning, deep-copying pointer so frames nest by value.
class FrameBox {
 public:
  FrameBox(Frame frame);  // NOLINT(google-explicit-constructor)
  FrameBox(const FrameBox& other);
  FrameBox(FrameBox&&) noexcept = default;
  FrameBox& operator=(const FrameBox& other);
  FrameBox& operator=(FrameBox&&) noexcept = default;
  ~FrameBox();

  const Frame& get() const { return *frame_; }
  Frame& get() { return *frame_; }

  friend bool operator==(const FrameBox& a, const FrameBox& b);

 private:
  std::unique_ptr<Frame> frame_;
};

using Filler = std::variant<InstanceRef, Literal, Variable, Gap, FrameBox>;

struct Slot {
  std::string role;  // without the leading ':'
  Filler filler;

  friend bool operator==(const Slot&, const Slot&) = default;
};

class Frame {
 public:
  Frame() = default;
  explicit Frame(std::string type, int counter = 0)
      : type(std::move(type)), counter(counter) {}

  std::string type;
  int counter = 0;
  std::vector<Slot> slots;  // declaration order is kept for printing

  const Filler* Find(std::string_view role) const;
  Filler* Find(std::string_view role);
  // Replaces an existing slot in place or appends a new one.
  void Set(std::string_view role, Filler filler);
  Frame& With(std::string_view role, Filler filler) {
    Set(role, std::move(filler));
    return *this;
  }

  // "*want-1", or "*want" when unnumbered.
  std::string InstanceName() const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

const Frame* AsFrame(const Filler& filler);
Frame* AsFrame(Filler& filler);

// Concept key a filler denotes: the type of a frame node or instance
// reference, the text of a literal, empty otherwise.
std::string ConceptKey(const Filler& filler);

std::string InstanceName(const InstanceRef& ref);

// One-line S-expression.
std::string ToString(const Frame& frame);
std::string ToString(const Filler& filler);
// Indented multi-line rendering in the style of the listing above.
std::string ToPrettyString(const Frame& frame);

enum class NameMode {
  // A trailing "-<digits>" on a name is the instance counter.
  kNumbered,
  // Names are taken verbatim; everything is unnumbered.
  kPattern,
};

// Parses one frame. ";" starts a comment that runs to end of line. Literals
// are double-quoted strings or bare tokens that do not start with '*', '?',
// '<', ':' or '('. Throws SyntaxError.
Frame ParseFrame(std::string_view text, NameMode mode = NameMode::kPattern);
Filler ParseFiller(std::string_view text, NameMode mode = NameMode::kPattern);

// Per-type monotone instance counters owned by one session.
class InstanceCounter {
 public:
  int Next(const std::string& type) { return ++next_[type]; }
  int Peek(const std::string& type) const;

 private:
  std::map<std::string, int> next_;
};

// Gives every unnumbered node a fresh counter. Unnumbered instance
// references of the same type within one call denote the same instance and
// share a counter.
void NumberFresh(Frame& frame, InstanceCounter& counter);
bool IsFullyNumbered(const Frame& frame);

// Renumbers instances by order of first appearance per type, so frames that
// differ only in counter values become identical.
Frame Canonical(const Frame& frame);
bool StructurallyEqual(const Frame& a, const Frame& b);

// Depth-first visit of every filler, parents before children.
void VisitFillers(const Frame& frame,
                  const std::function<void(const Filler&)>& visit);
void VisitFillers(Frame& frame, const std::function<void(Filler&)>& visit);

using Bindings = std::map<std::string, Filler>;

// One-way matching of a pattern against a concrete frame. Every pattern slot
// must be present in the frame (extra frame slots are allowed). A pattern
// instance reference matches any instance or frame node of the same type.
// Variables bind to whole fillers; a repeated variable must match an equal
// filler. Bindings are extended in place and left unspecified on failure.
bool Match(const Frame& pattern, const Frame& frame, Bindings& bindings);
bool Match(const Filler& pattern, const Filler& value, Bindings& bindings);

// Replaces variables by their bindings. Slots whose filler is an unbound
// variable are dropped. `bound` counts the variable occurrences replaced.
Frame Substitute(const Frame& pattern, const Bindings& bindings,
                 int* bound = nullptr);

std::vector<std::string> Variables(const Frame& pattern);

}  // namespace situ

#endif  // SITU_FRAME_H_
