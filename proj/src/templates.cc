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

#include "situ/templates.h"

#include <cctype>
#include <sstream>

#include "situ/errors.h"

namespace situ::dialogue {
namespace {

class LineReader {
 public:
  LineReader(std::string_view line, std::string where)
      : line_(line), where_(std::move(where)) {}

  [[noreturn]] void Fail(const std::string& what) const {
    throw LoadError(where_ + ": " + what);
  }

  void SkipSpace() {
    while (pos_ < line_.size() &&
           std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
  }

  bool AtEnd() {
    SkipSpace();
    return pos_ >= line_.size();
  }

  bool Keyword(std::string_view word) {
    SkipSpace();
    if (line_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  char Peek() {
    SkipSpace();
    return pos_ < line_.size() ? line_[pos_] : '\0';
  }

  void Expect(char c) {
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string Quoted() {
    Expect('"');
    std::string out;
    while (pos_ < line_.size() && line_[pos_] != '"') {
      if (line_[pos_] == '\\' && pos_ + 1 < line_.size()) ++pos_;
      out.push_back(line_[pos_++]);
    }
    if (pos_ >= line_.size()) Fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string Name() {
    SkipSpace();
    const size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ':' &&
           !std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) Fail("missing template name");
    return std::string(line_.substr(start, pos_ - start));
  }

 private:
  std::string_view line_;
  std::string where_;
  size_t pos_ = 0;
};

bool Blank(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

const ResponseTemplate* TemplateSet::Find(std::string_view name) const {
  const auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &it->second;
}

TemplateSet TemplateSet::MergedWith(const TemplateSet& overrides) const {
  TemplateSet merged = *this;
  for (const auto& [name, tmpl] : overrides.by_name_) merged.Add(tmpl);
  return merged;
}

TemplateSet ParseTemplates(std::string_view set_name, std::string_view text) {
  TemplateSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Blank(line)) continue;
    LineReader reader(line, "templates " + std::string(set_name) + " line " +
                                std::to_string(line_no));
    ResponseTemplate tmpl;
    tmpl.name = reader.Name();
    reader.Expect(':');
    if (!reader.Keyword("spoken")) reader.Fail("expected 'spoken'");
    tmpl.spoken = reader.Quoted();
    if (reader.Keyword("display")) {
      DisplayPattern display;
      display.title = reader.Quoted();
      reader.Expect('[');
      if (reader.Peek() != ']') {
        display.items.push_back(reader.Quoted());
        while (reader.Peek() == ',') {
          reader.Expect(',');
          display.items.push_back(reader.Quoted());
        }
      }
      reader.Expect(']');
      tmpl.display = std::move(display);
    }
    if (!reader.AtEnd()) reader.Fail("trailing text");
    if (set.Find(tmpl.name) != nullptr) reader.Fail("duplicate template " + tmpl.name);
    set.Add(std::move(tmpl));
  }
  return set;
}

}  // namespace situ::dialogue
