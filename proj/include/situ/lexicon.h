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

#ifndef SITU_LEXICON_H_
#define SITU_LEXICON_H_

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace situ {

// Word inventory the recognizer may output in one situation.
struct Lexicon {
  std::string name;
  std::set<std::string> words;       // lowercase, no whitespace
  std::vector<std::string> phrases;  // multiword entries, words joined by ' '

  bool Contains(std::string_view word) const {
    return words.find(std::string(word)) != words.end();
  }
};

// Dictionary file: one word or double-quoted phrase per line; '#' starts a
// comment. Phrase words are added to the word set. Throws LoadError when an
// entry is not lowercase or the dictionary ends up empty.
Lexicon ParseLexicon(std::string name, std::string_view text);

// Union of several lexicons, named GLOBAL.
Lexicon MakeGlobalLexicon(std::span<const Lexicon* const> parts);

}  // namespace situ

#endif  // SITU_LEXICON_H_
