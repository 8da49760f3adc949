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

// Loose pattern grammar. A grammar file holds word classes, preference
// declarations and rules:
//
//   class AREA: computer science => *computer-science
//   class KIND: language => *programming-language | *natural-language
//   prefer kb-known 0.5
//   i want to learn <AREA> => (*want (:agent *i) (:theme <AREA>)) @ 1.0
//
// See docs/formats.md for the full syntax.

#ifndef SITU_GRAMMAR_H_
#define SITU_GRAMMAR_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "situ/frame.h"

namespace situ::semantics {

struct PatternElement {
  enum class Kind { kWord, kOptionalWord, kGap };
  Kind kind = Kind::kWord;
  std::string text;  // the word, or the class name of a gap
};

struct ClassEntry {
  std::vector<std::string> phrase;
  // Each reading is an unnumbered InstanceRef (a concept) or a Literal.
  std::vector<Filler> readings;
};

struct WordClass {
  std::string name;
  std::vector<ClassEntry> entries;
};

struct GrammarRule {
  std::vector<PatternElement> pattern;
  Frame skeleton;
  double preference = 1.0;
  std::string text;  // source line, for diagnostics
};

// Declared preference: `prefer <test> <weight>`.
struct PreferenceSpec {
  std::string test;
  double weight = 0.0;
};

struct Grammar {
  std::string name;
  std::map<std::string, WordClass> classes;
  std::vector<GrammarRule> rules;
  std::vector<PreferenceSpec> preferences;

  // Every word the rules and classes can consume.
  std::set<std::string> Vocabulary() const;
};

// Throws LoadError naming the line on any syntax or consistency problem:
// unknown class, a pattern gap missing from the skeleton (or the reverse),
// a repeated gap, an empty grammar.
Grammar ParseGrammar(std::string name, std::string_view text);

}  // namespace situ::semantics

#endif  // SITU_GRAMMAR_H_
