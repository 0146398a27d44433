// Copyright 2026 The TEA Indexer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Cleaning and stemming of annotation text.
//
// Cleaning turns raw text into an ordered list of content tokens:
//
//   NFC -> tokenize -> lowercase -> repair map -> drop punctuation/numbers
//       -> drop stopwords -> drop short tokens
//
// Stemming strips suffixes in ordered phases. Each phase fires at most one
// rule: among the rules whose suffix matches and whose residual-length
// condition holds, the one with the longest suffix.

#ifndef TEA_PREPROCESS_H_
#define TEA_PREPROCESS_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tea/corpus.h"

namespace tea {

// Multi-word surface sequence -> replacement tokens. Used to undo splits
// such as "hémato me" -> "hématome" before stopword removal.
struct RepairMap {
  std::map<std::vector<std::string>, std::vector<std::string>> entries;
  size_t max_key_len = 0;

  void Add(std::vector<std::string> key, std::vector<std::string> value);
  bool empty() const { return entries.empty(); }
  friend bool operator==(const RepairMap& a, const RepairMap& b) {
    return a.entries == b.entries;
  }
};

struct CleaningConfig {
  std::set<std::string> stopwords;
  RepairMap repairs;
  bool fold_case = true;
  bool split_apostrophes = true;
  bool strip_punctuation = true;
  bool drop_numeric_tokens = true;
  int min_token_length = 2;

  friend bool operator==(const CleaningConfig&,
                         const CleaningConfig&) = default;
};

// Throws ConfigError if a stopword is not in normalized form (lowercase NFC
// single token) or min_token_length < 1.
void ValidateCleaningConfig(const CleaningConfig& config);

// Normalized form of a single word as used by stopword lists.
std::string NormalizeWord(std::string_view word);

std::vector<std::string> Clean(std::string_view text,
                               const CleaningConfig& config);

struct StemRule {
  std::string suffix;
  std::string replacement;
  int min_stem = 1;  // minimum residual length in code points

  friend bool operator==(const StemRule&, const StemRule&) = default;
};

struct StemPhase {
  int number = 0;
  std::vector<StemRule> rules;

  friend bool operator==(const StemPhase&, const StemPhase&) = default;
};

struct StemmerRuleset {
  std::string language;
  std::vector<StemPhase> phases;

  friend bool operator==(const StemmerRuleset&,
                         const StemmerRuleset&) = default;
};

// Applies one phase. Returns the token unchanged when no rule applies.
std::string ApplyPhase(std::string_view token, const StemPhase& phase);

std::string Stem(std::string_view token, const StemmerRuleset& ruleset);

// Rule file grammar:
//
//   # comment
//   language fr
//   phase 1
//   aux -> al minstem=2
//   s ->        minstem=3
//
// Phases must be numbered 1, 2, 3, ... in file order. The replacement may be
// omitted (empty). minstem defaults to 1. A replacement longer than its
// suffix is rejected so that stemming never lengthens a token.
StemmerRuleset ParseRuleset(std::string_view content);
StemmerRuleset LoadRuleset(const std::filesystem::path& path);
std::string FormatRuleset(const StemmerRuleset& ruleset);

// One normalized word per line; '#' starts a comment.
std::set<std::string> ParseStopwords(std::string_view content);
std::set<std::string> LoadStopwords(const std::filesystem::path& path);

// "surface words => replacement words" per line; '#' starts a comment.
RepairMap ParseRepairMap(std::string_view content);
RepairMap LoadRepairMap(const std::filesystem::path& path);
std::string FormatRepairMap(const RepairMap& map);

struct Document {
  std::string annotation_id;
  std::string image_id;
  std::vector<std::string> tokens;  // stems, in text order
  // stem -> surface form -> occurrences
  std::map<std::string, std::map<std::string, int>> surface_counts;
  // stem -> most frequent surface form (ties: lexicographically smallest)
  std::map<std::string, std::string> surface_forms;
  size_t length_words = 0;

  friend bool operator==(const Document&, const Document&) = default;
};

Document PreprocessDocument(const Annotation& annotation,
                            const CleaningConfig& config,
                            const StemmerRuleset& ruleset);

// Preprocesses every annotation in corpus order using up to `jobs` threads.
std::vector<Document> PreprocessCorpus(const Corpus& corpus,
                                       const CleaningConfig& config,
                                       const StemmerRuleset& ruleset,
                                       int jobs = 1);

// Picks the most frequent surface form, ties broken lexicographically.
std::string DominantSurface(const std::map<std::string, int>& counts);

}  // namespace tea

#endif  // TEA_PREPROCESS_H_
