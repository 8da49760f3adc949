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

#include "situ/recognizer.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "situ/errors.h"
#include "situ/world.h"

namespace situ {
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

void CheckWord(const std::string& lexicon, const std::string& word) {
  for (char c : word) {
    if (std::isspace(static_cast<unsigned char>(c)) ||
        std::isupper(static_cast<unsigned char>(c))) {
      throw LoadError("dictionary " + lexicon + ": entry '" + word +
                      "' must be lowercase without spaces");
    }
  }
}

}  // namespace

Lexicon ParseLexicon(std::string name, std::string_view text) {
  Lexicon lexicon;
  lexicon.name = std::move(name);
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    const std::string entry = Trim(line);
    if (entry.empty()) continue;
    if (entry.front() == '"') {
      if (entry.size() < 3 || entry.back() != '"') {
        throw LoadError("dictionary " + lexicon.name + " line " +
                        std::to_string(line_no) + ": unterminated phrase");
      }
      std::istringstream words(entry.substr(1, entry.size() - 2));
      std::string word;
      std::string phrase;
      while (words >> word) {
        CheckWord(lexicon.name, word);
        lexicon.words.insert(word);
        phrase += (phrase.empty() ? "" : " ") + word;
      }
      lexicon.phrases.push_back(phrase);
    } else {
      CheckWord(lexicon.name, entry);
      lexicon.words.insert(entry);
    }
  }
  if (lexicon.words.empty()) {
    throw LoadError("dictionary " + lexicon.name + " is empty");
  }
  return lexicon;
}

Lexicon MakeGlobalLexicon(std::span<const Lexicon* const> parts) {
  Lexicon global;
  global.name = "GLOBAL";
  for (const Lexicon* part : parts) {
    global.words.insert(part->words.begin(), part->words.end());
    for (const std::string& phrase : part->phrases) {
      if (std::find(global.phrases.begin(), global.phrases.end(), phrase) ==
          global.phrases.end()) {
        global.phrases.push_back(phrase);
      }
    }
  }
  return global;
}

}  // namespace situ

namespace situ::recognizer {

std::string Hypothesis::Text() const {
  std::string out;
  for (const std::string& word : words) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

bool Better(const Hypothesis& a, const Hypothesis& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.words < b.words;
}

std::vector<std::string> Tokenize(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    // Quotes and hyphens only count inside a word.
    while (!current.empty() && (current.back() == '\'' || current.back() == '-'))
      current.pop_back();
    if (!current.empty()) tokens.push_back(current);
    current.clear();
  };
  for (char c : raw) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if ((c == '\'' || c == '-') && !current.empty()) {
      current.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

size_t DamerauLevenshtein(std::string_view a, std::string_view b) {
  const size_t n = a.size();
  const size_t m = b.size();
  const size_t inf = n + m;
  // (n + 2) x (m + 2) table with a sentinel row and column.
  std::vector<size_t> d((n + 2) * (m + 2), 0);
  auto at = [&](size_t i, size_t j) -> size_t& { return d[i * (m + 2) + j]; };
  at(0, 0) = inf;
  for (size_t i = 0; i <= n; ++i) {
    at(i + 1, 0) = inf;
    at(i + 1, 1) = i;
  }
  for (size_t j = 0; j <= m; ++j) {
    at(0, j + 1) = inf;
    at(1, j + 1) = j;
  }
  std::array<size_t, 256> last_row{};  // last row where each char occurred
  for (size_t i = 1; i <= n; ++i) {
    size_t last_match_col = 0;
    for (size_t j = 1; j <= m; ++j) {
      const size_t k = last_row[static_cast<unsigned char>(b[j - 1])];
      const size_t l = last_match_col;
      size_t cost = 1;
      if (a[i - 1] == b[j - 1]) {
        cost = 0;
        last_match_col = j;
      }
      at(i + 1, j + 1) = std::min({
          at(i, j) + cost,
          at(i + 1, j) + 1,
          at(i, j + 1) + 1,
          at(k, l) + (i - k - 1) + 1 + (j - l - 1),
      });
    }
    last_row[static_cast<unsigned char>(a[i - 1])] = i;
  }
  return at(n + 1, m + 1);
}

int64_t NormalizedCost(std::string_view a, std::string_view b) {
  const auto longest = static_cast<int64_t>(std::max(a.size(), b.size()));
  if (longest == 0) return 0;
  const auto distance = static_cast<int64_t>(DamerauLevenshtein(a, b));
  return (distance * kCostScale + longest / 2) / longest;
}

std::vector<WordChoice> NearestWords(std::string_view token,
                                     const Lexicon& lexicon, size_t k) {
  const auto threshold =
      static_cast<int64_t>(kOovThreshold * static_cast<double>(kCostScale));
  std::vector<WordChoice> choices;
  for (const std::string& word : lexicon.words) {
    // Length difference alone is a lower bound on the distance.
    const size_t longest = std::max(word.size(), token.size());
    const size_t diff = word.size() > token.size() ? word.size() - token.size()
                                                   : token.size() - word.size();
    if (2 * diff > longest) continue;
    const int64_t cost = NormalizedCost(token, word);
    if (cost <= threshold) choices.push_back({word, cost});
  }
  std::sort(choices.begin(), choices.end(), [](const auto& a, const auto& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.word < b.word;
  });
  if (choices.size() > k) choices.resize(k);
  if (choices.empty()) choices.push_back({kOovMarker, kCostScale});
  return choices;
}

NBestList Recognize(std::string_view raw, const Lexicon& lexicon, size_t n) {
  if (n == 0) throw RangeError("n-best size must be at least 1");
  const std::vector<std::string> tokens = Tokenize(raw);
  if (tokens.empty()) throw EmptyInputError();

  // Per-word costs are additive and independent, so keeping the n best
  // prefixes at every step yields exactly the n best full sequences.
  std::vector<Hypothesis> beam{Hypothesis{}};
  for (const std::string& token : tokens) {
    const std::vector<WordChoice> choices = NearestWords(token, lexicon);
    std::vector<Hypothesis> next;
    next.reserve(beam.size() * choices.size());
    for (const Hypothesis& prefix : beam) {
      for (const WordChoice& choice : choices) {
        Hypothesis extended = prefix;
        extended.words.push_back(choice.word);
        extended.cost += choice.cost;
        next.push_back(std::move(extended));
      }
    }
    std::sort(next.begin(), next.end(), Better);
    if (next.size() > n) next.resize(n);
    beam = std::move(next);
  }
  return NBestList{std::move(beam), n};
}

double Perplexity(const Lexicon& lexicon) {
  return static_cast<double>(lexicon.words.size());
}

const Lexicon& ActivateDictionary(const ContextSwitch& context) {
  return context.assets->Dictionary(context.entry.dictionary_id);
}

}  // namespace situ::recognizer
