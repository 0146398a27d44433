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

#include <sstream>

#include "tea/error.h"
#include "tea/parallel.h"
#include "tea/preprocess.h"
#include "tea/text.h"

namespace tea {
namespace {

// Strips a trailing '#' comment and surrounding blanks.
std::string StripComment(std::string_view line) {
  const auto hash = line.find('#');
  return text::Trim(line.substr(0, hash));
}

std::vector<std::string> NormalizeWords(std::string_view phrase) {
  std::vector<std::string> out;
  for (const auto& w : text::SplitWords(phrase)) out.push_back(NormalizeWord(w));
  return out;
}

}  // namespace

void RepairMap::Add(std::vector<std::string> key,
                    std::vector<std::string> value) {
  max_key_len = std::max(max_key_len, key.size());
  entries[std::move(key)] = std::move(value);
}

std::string NormalizeWord(std::string_view word) {
  return text::ToLower(text::ToNfc(text::Trim(word)));
}

void ValidateCleaningConfig(const CleaningConfig& config) {
  if (config.min_token_length < 1)
    throw ConfigError("min_token_length must be >= 1");
  for (const auto& w : config.stopwords) {
    const auto tokens = text::Tokenize(w, !config.split_apostrophes);
    if (w.empty() || NormalizeWord(w) != w || tokens.size() != 1 ||
        tokens[0].text != w)
      throw ConfigError("stopword '" + w + "' is not in normalized form");
  }
}

std::vector<std::string> Clean(std::string_view raw,
                               const CleaningConfig& config) {
  const std::string nfc = text::ToNfc(raw);
  auto tokens = text::Tokenize(nfc, !config.split_apostrophes);
  if (config.fold_case) {
    for (auto& t : tokens) t.text = text::ToLower(t.text);
  }

  // Repairs run on the raw token stream so that only truly adjacent words
  // are merged. Longest key wins.
  if (!config.repairs.empty()) {
    std::vector<text::RawToken> repaired;
    repaired.reserve(tokens.size());
    size_t i = 0;
    while (i < tokens.size()) {
      bool matched = false;
      const size_t longest =
          std::min(config.repairs.max_key_len, tokens.size() - i);
      for (size_t len = longest; len >= 1 && !matched; --len) {
        std::vector<std::string> key;
        key.reserve(len);
        for (size_t k = 0; k < len; ++k) key.push_back(tokens[i + k].text);
        const auto it = config.repairs.entries.find(key);
        if (it == config.repairs.entries.end()) continue;
        for (const auto& r : it->second)
          repaired.push_back({r, text::TokenClass::kLetters});
        i += len;
        matched = true;
      }
      if (!matched) repaired.push_back(std::move(tokens[i++]));
    }
    tokens = std::move(repaired);
  }

  std::vector<std::string> out;
  for (auto& t : tokens) {
    if (t.cls == text::TokenClass::kPunctuation && config.strip_punctuation)
      continue;
    if (t.cls == text::TokenClass::kDigits && config.drop_numeric_tokens)
      continue;
    if (config.stopwords.contains(t.text)) continue;
    if (text::Length(t.text) < static_cast<size_t>(config.min_token_length))
      continue;
    out.push_back(std::move(t.text));
  }
  return out;
}

std::set<std::string> ParseStopwords(std::string_view content) {
  std::set<std::string> out;
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = StripComment(line);
    if (body.empty()) continue;
    const auto words = NormalizeWords(body);
    if (words.size() != 1)
      throw ParseError("expected one stopword per line", line_no);
    const auto tokens = text::Tokenize(words[0], false);
    if (tokens.size() != 1 || tokens[0].text != words[0])
      throw ParseError("stopword '" + words[0] + "' does not survive cleaning",
                       line_no);
    out.insert(words[0]);
  }
  return out;
}

std::set<std::string> LoadStopwords(const std::filesystem::path& path) {
  return ParseStopwords(ReadUtf8File(path));
}

RepairMap ParseRepairMap(std::string_view content) {
  RepairMap map;
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = StripComment(line);
    if (body.empty()) continue;
    const auto arrow = body.find("=>");
    if (arrow == std::string::npos)
      throw ParseError("repair line must look like 'words => replacement'",
                       line_no);
    auto key = NormalizeWords(body.substr(0, arrow));
    auto value = NormalizeWords(body.substr(arrow + 2));
    if (key.empty() || value.empty())
      throw ParseError("repair entry with empty side", line_no);
    if (map.entries.contains(key))
      throw ParseError("duplicate repair entry", line_no);
    map.Add(std::move(key), std::move(value));
  }
  return map;
}

RepairMap LoadRepairMap(const std::filesystem::path& path) {
  return ParseRepairMap(ReadUtf8File(path));
}

std::string FormatRepairMap(const RepairMap& map) {
  std::string out;
  for (const auto& [key, value] : map.entries) {
    out += text::Join(key, " ") + " => " + text::Join(value, " ") + "\n";
  }
  return out;
}

std::string DominantSurface(const std::map<std::string, int>& counts) {
  const std::string* best = nullptr;
  int best_count = 0;
  for (const auto& [surface, count] : counts) {
    // Map order is lexicographic, so strict '>' keeps the smallest on ties.
    if (best == nullptr || count > best_count) {
      best = &surface;
      best_count = count;
    }
  }
  return best == nullptr ? std::string() : *best;
}

Document PreprocessDocument(const Annotation& annotation,
                            const CleaningConfig& config,
                            const StemmerRuleset& ruleset) {
  Document doc;
  doc.annotation_id = annotation.annotation_id;
  doc.image_id = annotation.image_id;
  for (auto& surface : Clean(annotation.text, config)) {
    std::string stem = Stem(surface, ruleset);
    if (config.stopwords.contains(stem)) continue;
    ++doc.surface_counts[stem][surface];
    doc.tokens.push_back(std::move(stem));
  }
  for (const auto& [stem, counts] : doc.surface_counts)
    doc.surface_forms[stem] = DominantSurface(counts);
  doc.length_words = doc.tokens.size();
  return doc;
}

std::vector<Document> PreprocessCorpus(const Corpus& corpus,
                                       const CleaningConfig& config,
                                       const StemmerRuleset& ruleset,
                                       int jobs) {
  std::vector<Document> docs(corpus.size());
  ParallelFor(corpus.size(), jobs, [&](size_t i) {
    docs[i] = PreprocessDocument(corpus.annotations()[i], config, ruleset);
  });
  return docs;
}

}  // namespace tea
