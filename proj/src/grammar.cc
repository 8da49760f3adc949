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

#include "situ/grammar.h"

#include <cctype>
#include <cmath>
#include <sstream>

#include "situ/errors.h"

namespace situ::semantics {
namespace {

std::string Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1])))
    --end;
  return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> Words(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> words;
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

double ParseNumber(const std::string& text, const std::string& where) {
  try {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(value)) throw std::exception();
    return value;
  } catch (const std::exception&) {
    throw LoadError(where + ": bad number '" + text + "'");
  }
}

class GrammarBuilder {
 public:
  explicit GrammarBuilder(std::string name) { grammar_.name = std::move(name); }

  void Line(const std::string& raw, int line_no) {
    where_ = "grammar " + grammar_.name + " line " + std::to_string(line_no);
    std::string line = raw;
    if (const size_t hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = Trim(line);
    if (line.empty()) return;
    if (StartsWith(line, "class ")) {
      ClassLine(line.substr(6));
    } else if (StartsWith(line, "prefer ")) {
      PreferLine(line.substr(7));
    } else {
      RuleLine(line);
    }
  }

  Grammar Finish() {
    where_ = "grammar " + grammar_.name;
    if (grammar_.rules.empty()) throw LoadError(where_ + ": no rules");
    for (const GrammarRule& rule : grammar_.rules) {
      for (const PatternElement& element : rule.pattern) {
        if (element.kind == PatternElement::Kind::kGap &&
            grammar_.classes.count(element.text) == 0) {
          throw LoadError(where_ + ": rule '" + rule.text +
                          "' uses undeclared class " + element.text);
        }
      }
    }
    return std::move(grammar_);
  }

 private:
  void ClassLine(const std::string& body) {
    const size_t colon = body.find(':');
    const size_t arrow = body.find("=>");
    if (colon == std::string::npos || arrow == std::string::npos ||
        arrow < colon) {
      throw LoadError(where_ + ": expected 'class NAME: phrase => reading'");
    }
    const std::string name = Trim(body.substr(0, colon));
    if (name.empty()) throw LoadError(where_ + ": empty class name");
    ClassEntry entry;
    entry.phrase = Words(body.substr(colon + 1, arrow - colon - 1));
    if (entry.phrase.empty()) throw LoadError(where_ + ": empty class phrase");
    std::istringstream readings(body.substr(arrow + 2));
    std::string reading;
    while (std::getline(readings, reading, '|')) {
      reading = Trim(reading);
      if (reading.empty()) throw LoadError(where_ + ": empty reading");
      try {
        Filler filler = ParseFiller(reading, NameMode::kPattern);
        if (!std::holds_alternative<InstanceRef>(filler) &&
            !std::holds_alternative<Literal>(filler)) {
          throw LoadError(where_ + ": reading must be *concept or literal");
        }
        entry.readings.push_back(std::move(filler));
      } catch (const SyntaxError& e) {
        throw LoadError(where_ + ": " + e.what());
      }
    }
    if (entry.readings.empty()) throw LoadError(where_ + ": no readings");
    WordClass& word_class = grammar_.classes[name];
    word_class.name = name;
    word_class.entries.push_back(std::move(entry));
  }

  void PreferLine(const std::string& body) {
    const std::vector<std::string> parts = Words(body);
    if (parts.size() != 2) {
      throw LoadError(where_ + ": expected 'prefer <test> <weight>'");
    }
    const std::string& test = parts[0];
    if (test != "rule-preference" && test != "hypothesis-score" &&
        test != "kb-known" && !(test.rfind("has-role:", 0) == 0 && test.size() > 9)) {
      throw LoadError(where_ + ": unknown preference test '" + test + "'");
    }
    grammar_.preferences.push_back({parts[0], ParseNumber(parts[1], where_)});
  }

  void RuleLine(const std::string& line) {
    const size_t arrow = line.find("=>");
    if (arrow == std::string::npos) {
      throw LoadError(where_ + ": expected 'pattern => skeleton @ weight'");
    }
    GrammarRule rule;
    rule.text = line;
    std::string skeleton = Trim(line.substr(arrow + 2));
    if (const size_t at = skeleton.rfind('@');
        at != std::string::npos && skeleton.find(')', at) == std::string::npos) {
      rule.preference = ParseNumber(Trim(skeleton.substr(at + 1)), where_);
      skeleton = Trim(skeleton.substr(0, at));
    }
    try {
      rule.skeleton = ParseFrame(skeleton, NameMode::kPattern);
    } catch (const SyntaxError& e) {
      throw LoadError(where_ + ": " + e.what());
    }

    std::set<std::string> pattern_gaps;
    for (const std::string& token : Words(line.substr(0, arrow))) {
      PatternElement element;
      if (token.size() > 2 && token.front() == '<' && token.back() == '>') {
        element.kind = PatternElement::Kind::kGap;
        element.text = token.substr(1, token.size() - 2);
        if (!pattern_gaps.insert(element.text).second) {
          throw LoadError(where_ + ": gap <" + element.text + "> repeated");
        }
      } else if (token.size() > 2 && token.front() == '[' &&
                 token.back() == ']') {
        element.kind = PatternElement::Kind::kOptionalWord;
        element.text = token.substr(1, token.size() - 2);
      } else {
        element.text = token;
      }
      for (char c : element.text) {
        if (element.kind != PatternElement::Kind::kGap &&
            std::isupper(static_cast<unsigned char>(c))) {
          throw LoadError(where_ + ": pattern words must be lowercase");
        }
      }
      rule.pattern.push_back(std::move(element));
    }
    if (rule.pattern.empty()) throw LoadError(where_ + ": empty pattern");

    std::set<std::string> skeleton_gaps;
    VisitFillers(rule.skeleton, [&](const Filler& filler) {
      if (const auto* gap = std::get_if<Gap>(&filler)) {
        skeleton_gaps.insert(gap->name);
      }
    });
    for (const std::string& gap : pattern_gaps) {
      if (skeleton_gaps.count(gap) == 0) {
        throw LoadError(where_ + ": gap <" + gap + "> not bound in skeleton");
      }
    }
    for (const std::string& gap : skeleton_gaps) {
      if (pattern_gaps.count(gap) == 0) {
        throw LoadError(where_ + ": skeleton gap <" + gap +
                        "> missing from pattern");
      }
    }
    grammar_.rules.push_back(std::move(rule));
  }

  Grammar grammar_;
  std::string where_;
};

}  // namespace

std::set<std::string> Grammar::Vocabulary() const {
  std::set<std::string> words;
  for (const GrammarRule& rule : rules) {
    for (const PatternElement& element : rule.pattern) {
      if (element.kind != PatternElement::Kind::kGap) words.insert(element.text);
    }
  }
  for (const auto& [name, word_class] : classes) {
    for (const ClassEntry& entry : word_class.entries) {
      words.insert(entry.phrase.begin(), entry.phrase.end());
    }
  }
  return words;
}

Grammar ParseGrammar(std::string name, std::string_view text) {
  GrammarBuilder builder(std::move(name));
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) builder.Line(line, ++line_no);
  return builder.Finish();
}

}  // namespace situ::semantics
