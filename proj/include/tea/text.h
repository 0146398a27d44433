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

// UTF-8 helpers backed by ICU. All strings are UTF-8 encoded std::string.

#ifndef TEA_TEXT_H_
#define TEA_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace tea::text {

bool IsValidUtf8(std::string_view s);

// Canonical composition (NFC). Input must be valid UTF-8.
std::string ToNfc(std::string_view s);

// Full Unicode lowercase mapping, locale independent.
std::string ToLower(std::string_view s);

// Removes combining marks after canonical decomposition ("é" -> "e").
std::string StripDiacritics(std::string_view s);

// Number of code points.
size_t Length(std::string_view s);

bool EndsWith(std::string_view s, std::string_view suffix);

// Collapses runs of Unicode whitespace to one ASCII space and trims.
std::string CollapseWhitespace(std::string_view s);

std::string Trim(std::string_view s);

// Splits on ASCII whitespace.
std::vector<std::string> SplitWords(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

enum class TokenClass { kLetters, kDigits, kPunctuation };

struct RawToken {
  std::string text;
  TokenClass cls;
};

// Tokenizer shared by the cleaner and the query parser. A token is a maximal
// run of letters (combining marks included) or a maximal run of digits.
// Apostrophes separate tokens unless keep_apostrophes is set, in which case
// an apostrophe between two letters stays inside the token. Every other
// punctuation code point becomes its own kPunctuation token; whitespace and
// symbols separate.
std::vector<RawToken> Tokenize(std::string_view s, bool keep_apostrophes);

}  // namespace tea::text

#endif  // TEA_TEXT_H_
