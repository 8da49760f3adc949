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

// Text stand-in for the speech front end. Each input token is snapped to its
// nearest dictionary words and the per-token choices are beam-combined into
// an N-best list of word sequences.

#ifndef SITU_RECOGNIZER_H_
#define SITU_RECOGNIZER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "situ/lexicon.h"

namespace situ {
struct ContextSwitch;
}

namespace situ::recognizer {

// Candidates kept per input token.
inline constexpr size_t kBeamPerToken = 3;
// Tokens farther than this (normalized) from every word become kOovMarker.
inline constexpr double kOovThreshold = 0.5;
inline constexpr char kOovMarker[] = "<unk>";
inline constexpr size_t kDefaultNBest = 5;

// Costs are kept in integer millionths so that sums are exact and every
// ordering is reproducible.
inline constexpr int64_t kCostScale = 1'000'000;

struct Hypothesis {
  std::vector<std::string> words;
  int64_t cost = 0;  // sum of per-word costs in kCostScale units

  // Log-style score, <= 0; 0 is a perfect match.
  double score() const {
    return -static_cast<double>(cost) / static_cast<double>(kCostScale);
  }
  std::string Text() const;

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

// Best first: ascending cost, ties broken by lexicographic word sequence.
bool Better(const Hypothesis& a, const Hypothesis& b);

struct NBestList {
  std::vector<Hypothesis> hypotheses;
  size_t n = kDefaultNBest;
};

struct WordChoice {
  std::string word;
  int64_t cost = 0;
};

// Lowercased tokens; letters, digits, apostrophes and hyphens form words.
std::vector<std::string> Tokenize(std::string_view raw);

// Unrestricted Damerau-Levenshtein distance (adjacent transpositions).
size_t DamerauLevenshtein(std::string_view a, std::string_view b);
// Distance divided by the longer length, as a kCostScale integer.
int64_t NormalizedCost(std::string_view a, std::string_view b);

// Up to kBeamPerToken nearest words within kOovThreshold, nearest first
// (ties by word); a lone kOovMarker at full cost when nothing is close.
std::vector<WordChoice> NearestWords(std::string_view token,
                                     const Lexicon& lexicon,
                                     size_t k = kBeamPerToken);

// Throws EmptyInputError when raw has no tokens and RangeError when n == 0.
NBestList Recognize(std::string_view raw, const Lexicon& lexicon,
                    size_t n = kDefaultNBest);

// Uniform-branching model: the number of distinct words.
double Perplexity(const Lexicon& lexicon);

// The situation's lexicon. Throws ConfigError when the switch names a
// dictionary its asset store does not hold.
const Lexicon& ActivateDictionary(const ContextSwitch& context);

}  // namespace situ::recognizer

#endif  // SITU_RECOGNIZER_H_
