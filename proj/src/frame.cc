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

#include "situ/frame.h"

#include <cctype>
#include <set>
#include <sstream>

#include "situ/errors.h"

namespace situ {

FrameBox::FrameBox(Frame frame)
    : frame_(std::make_unique<Frame>(std::move(frame))) {}
FrameBox::FrameBox(const FrameBox& other)
    : frame_(std::make_unique<Frame>(*other.frame_)) {}
FrameBox& FrameBox::operator=(const FrameBox& other) {
  if (this != &other) frame_ = std::make_unique<Frame>(*other.frame_);
  return *this;
}
FrameBox::~FrameBox() = default;

bool operator==(const FrameBox& a, const FrameBox& b) {
  return *a.frame_ == *b.frame_;
}

const Filler* Frame::Find(std::string_view role) const {
  for (const Slot& slot : slots) {
    if (slot.role == role) return &slot.filler;
  }
  return nullptr;
}

Filler* Frame::Find(std::string_view role) {
  for (Slot& slot : slots) {
    if (slot.role == role) return &slot.filler;
  }
  return nullptr;
}

void Frame::Set(std::string_view role, Filler filler) {
  if (Filler* existing = Find(role)) {
    *existing = std::move(filler);
  } else {
    slots.push_back({std::string(role), std::move(filler)});
  }
}

std::string Frame::InstanceName() const {
  return situ::InstanceName(InstanceRef{type, counter});
}

std::string InstanceName(const InstanceRef& ref) {
  std::string name = "*" + ref.type;
  if (ref.counter > 0) name += "-" + std::to_string(ref.counter);
  return name;
}

const Frame* AsFrame(const Filler& filler) {
  const auto* box = std::get_if<FrameBox>(&filler);
  return box ? &box->get() : nullptr;
}

Frame* AsFrame(Filler& filler) {
  auto* box = std::get_if<FrameBox>(&filler);
  return box ? &box->get() : nullptr;
}

std::string ConceptKey(const Filler& filler) {
  if (const auto* ref = std::get_if<InstanceRef>(&filler)) return ref->type;
  if (const auto* lit = std::get_if<Literal>(&filler)) return lit->text;
  if (const Frame* frame = AsFrame(filler)) return frame->type;
  return {};
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool NeedsQuotes(const std::string& text) {
  if (text.empty()) return true;
  if (std::string_view("*?<:(\"").find(text.front()) != std::string_view::npos)
    return true;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
        c == ';' || c == '"') {
      return true;
    }
  }
  return false;
}

std::string QuoteLiteral(const std::string& text) {
  if (!NeedsQuotes(text)) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void Print(const Frame& frame, std::ostream& out, int indent);

void PrintFiller(const Filler& filler, std::ostream& out, int indent) {
  std::visit(
      [&](const auto& value) {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, InstanceRef>) {
          out << InstanceName(value);
        } else if constexpr (std::is_same_v<T, Literal>) {
          out << QuoteLiteral(value.text);
        } else if constexpr (std::is_same_v<T, Variable>) {
          out << '?' << value.name;
        } else if constexpr (std::is_same_v<T, Gap>) {
          out << '<' << value.name << '>';
        } else {
          Print(value.get(), out, indent);
        }
      },
      filler);
}

// indent < 0 prints on one line.
void Print(const Frame& frame, std::ostream& out, int indent) {
  out << '(' << frame.InstanceName();
  for (const Slot& slot : frame.slots) {
    if (indent < 0) {
      out << ' ';
    } else {
      out << '\n' << std::string(static_cast<size_t>(indent + 3), ' ');
    }
    out << "(:" << slot.role << ' ';
    PrintFiller(slot.filler, out, indent < 0 ? -1 : indent + 3);
    out << ')';
  }
  out << ')';
}

}  // namespace

std::string ToString(const Frame& frame) {
  std::ostringstream out;
  Print(frame, out, -1);
  return out.str();
}

std::string ToString(const Filler& filler) {
  std::ostringstream out;
  PrintFiller(filler, out, -1);
  return out.str();
}

std::string ToPrettyString(const Frame& frame) {
  std::ostringstream out;
  Print(frame, out, 0);
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FrameParser {
 public:
  FrameParser(std::string_view text, NameMode mode) : text_(text), mode_(mode) {}

  Frame ParseTopFrame() {
    Frame frame = ParseFrameBody();
    ExpectEnd();
    return frame;
  }

  Filler ParseTopFiller() {
    Filler filler = ParseFillerValue();
    ExpectEnd();
    return filler;
  }

 private:
  [[noreturn]] void Fail(const std::string& what) const {
    throw SyntaxError("frame syntax: " + what + " at offset " +
                      std::to_string(pos_) + " in '" + std::string(text_) +
                      "'");
  }

  void Skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  char Peek() {
    Skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void Expect(char c) {
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void ExpectEnd() {
    if (Peek() != '\0') Fail("trailing input");
  }

  std::string Atom() {
    Skip();
    const size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' ||
          c == ')' || c == ';' || c == '"') {
        break;
      }
      ++pos_;
    }
    if (start == pos_) Fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string Quoted() {
    Expect('"');
    std::string out;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out.push_back(text_[pos_++]);
    }
    if (pos_ >= text_.size()) Fail("unterminated string");
    ++pos_;
    return out;
  }

  InstanceRef SplitName(const std::string& atom) {
    if (atom.size() < 2 || atom.front() != '*') Fail("bad instance name");
    std::string name = atom.substr(1);
    if (mode_ == NameMode::kNumbered) {
      const size_t dash = name.rfind('-');
      if (dash != std::string::npos && dash > 0 && dash + 1 < name.size()) {
        const std::string digits = name.substr(dash + 1);
        bool numeric = digits.size() < 9;
        for (char c : digits) {
          numeric = numeric && std::isdigit(static_cast<unsigned char>(c));
        }
        if (numeric) return {name.substr(0, dash), std::stoi(digits)};
      }
    }
    return {name, 0};
  }

  Frame ParseFrameBody() {
    Expect('(');
    const InstanceRef head = SplitName(Atom());
    Frame frame(head.type, head.counter);
    while (Peek() == '(') {
      ++pos_;
      const std::string role = Atom();
      if (role.size() < 2 || role.front() != ':') Fail("expected :role");
      Filler filler = ParseFillerValue();
      Expect(')');
      if (frame.Find(role.substr(1)) != nullptr) Fail("duplicate role " + role);
      frame.slots.push_back({role.substr(1), std::move(filler)});
    }
    Expect(')');
    return frame;
  }

  Filler ParseFillerValue() {
    const char c = Peek();
    if (c == '(') return FrameBox(ParseFrameBody());
    if (c == '"') return Literal{Quoted()};
    const std::string atom = Atom();
    switch (atom.front()) {
      case '*':
        return SplitName(atom);
      case '?':
        if (atom.size() < 2) Fail("empty variable");
        return Variable{atom.substr(1)};
      case '<':
        if (atom.size() < 3 || atom.back() != '>') Fail("bad gap");
        return Gap{atom.substr(1, atom.size() - 2)};
      case ':':
        Fail("unexpected role " + atom);
      default:
        return Literal{atom};
    }
  }

  std::string_view text_;
  NameMode mode_;
  size_t pos_ = 0;
};

}  // namespace

Frame ParseFrame(std::string_view text, NameMode mode) {
  return FrameParser(text, mode).ParseTopFrame();
}

Filler ParseFiller(std::string_view text, NameMode mode) {
  return FrameParser(text, mode).ParseTopFiller();
}

// ---------------------------------------------------------------------------
// Numbering

int InstanceCounter::Peek(const std::string& type) const {
  const auto it = next_.find(type);
  return it == next_.end() ? 0 : it->second;
}

void VisitFillers(const Frame& frame,
                  const std::function<void(const Filler&)>& visit) {
  for (const Slot& slot : frame.slots) {
    visit(slot.filler);
    if (const Frame* child = AsFrame(slot.filler)) VisitFillers(*child, visit);
  }
}

void VisitFillers(Frame& frame, const std::function<void(Filler&)>& visit) {
  for (Slot& slot : frame.slots) {
    visit(slot.filler);
    if (Frame* child = AsFrame(slot.filler)) VisitFillers(*child, visit);
  }
}

namespace {

void NumberNode(Frame& frame, InstanceCounter& counter,
                std::map<std::string, int>& shared_refs) {
  if (frame.counter == 0) frame.counter = counter.Next(frame.type);
  for (Slot& slot : frame.slots) {
    if (auto* ref = std::get_if<InstanceRef>(&slot.filler)) {
      if (ref->counter == 0) {
        auto [it, inserted] = shared_refs.try_emplace(ref->type, 0);
        if (inserted) it->second = counter.Next(ref->type);
        ref->counter = it->second;
      }
    } else if (Frame* child = AsFrame(slot.filler)) {
      NumberNode(*child, counter, shared_refs);
    }
  }
}

void CanonicalNode(Frame& frame,
                   std::map<std::pair<std::string, int>, int>& renames,
                   std::map<std::string, int>& next) {
  auto rename = [&](const std::string& type, int& value) {
    if (value == 0) return;
    auto [it, inserted] = renames.try_emplace({type, value}, 0);
    if (inserted) it->second = ++next[type];
    value = it->second;
  };
  rename(frame.type, frame.counter);
  for (Slot& slot : frame.slots) {
    if (auto* ref = std::get_if<InstanceRef>(&slot.filler)) {
      rename(ref->type, ref->counter);
    } else if (Frame* child = AsFrame(slot.filler)) {
      CanonicalNode(*child, renames, next);
    }
  }
}

}  // namespace

void NumberFresh(Frame& frame, InstanceCounter& counter) {
  std::map<std::string, int> shared_refs;
  NumberNode(frame, counter, shared_refs);
}

bool IsFullyNumbered(const Frame& frame) {
  if (frame.counter == 0) return false;
  bool numbered = true;
  VisitFillers(frame, [&](const Filler& filler) {
    if (const auto* ref = std::get_if<InstanceRef>(&filler)) {
      numbered = numbered && ref->counter > 0;
    } else if (const Frame* child = AsFrame(filler)) {
      numbered = numbered && child->counter > 0;
    }
  });
  return numbered;
}

Frame Canonical(const Frame& frame) {
  Frame copy = frame;
  std::map<std::pair<std::string, int>, int> renames;
  std::map<std::string, int> next;
  CanonicalNode(copy, renames, next);
  return copy;
}

bool StructurallyEqual(const Frame& a, const Frame& b) {
  return Canonical(a) == Canonical(b);
}

// ---------------------------------------------------------------------------
// Matching

bool Match(const Filler& pattern, const Filler& value, Bindings& bindings) {
  if (const auto* var = std::get_if<Variable>(&pattern)) {
    const auto it = bindings.find(var->name);
    if (it != bindings.end()) return it->second == value;
    bindings.emplace(var->name, value);
    return true;
  }
  if (const auto* ref = std::get_if<InstanceRef>(&pattern)) {
    if (const auto* other = std::get_if<InstanceRef>(&value)) {
      return other->type == ref->type &&
             (ref->counter == 0 || other->counter == ref->counter);
    }
    if (const Frame* frame = AsFrame(value)) {
      return frame->type == ref->type &&
             (ref->counter == 0 || frame->counter == ref->counter);
    }
    return false;
  }
  if (const Frame* sub = AsFrame(pattern)) {
    const Frame* frame = AsFrame(value);
    return frame != nullptr && Match(*sub, *frame, bindings);
  }
  return pattern == value;
}

bool Match(const Frame& pattern, const Frame& frame, Bindings& bindings) {
  if (pattern.type != frame.type) return false;
  if (pattern.counter != 0 && pattern.counter != frame.counter) return false;
  for (const Slot& slot : pattern.slots) {
    const Filler* value = frame.Find(slot.role);
    if (value == nullptr || !Match(slot.filler, *value, bindings)) return false;
  }
  return true;
}

Frame Substitute(const Frame& pattern, const Bindings& bindings, int* bound) {
  Frame out(pattern.type, pattern.counter);
  for (const Slot& slot : pattern.slots) {
    if (const auto* var = std::get_if<Variable>(&slot.filler)) {
      const auto it = bindings.find(var->name);
      if (it == bindings.end()) continue;
      if (bound != nullptr) ++*bound;
      out.slots.push_back({slot.role, it->second});
    } else if (const Frame* child = AsFrame(slot.filler)) {
      out.slots.push_back({slot.role, FrameBox(Substitute(*child, bindings,
                                                          bound))});
    } else {
      out.slots.push_back(slot);
    }
  }
  return out;
}

std::vector<std::string> Variables(const Frame& pattern) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  VisitFillers(pattern, [&](const Filler& filler) {
    if (const auto* var = std::get_if<Variable>(&filler)) {
      if (seen.insert(var->name).second) names.push_back(var->name);
    }
  });
  return names;
}

}  // namespace situ
