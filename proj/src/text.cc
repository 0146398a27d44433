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

#include "tea/text.h"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cctype>
#include <stdexcept>

namespace tea::text {
namespace {

icu::UnicodeString FromUtf8(std::string_view s) {
  return icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
}

std::string ToUtf8(const icu::UnicodeString& u) {
  std::string out;
  u.toUTF8String(out);
  return out;
}

const icu::Normalizer2& Nfc() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFC unavailable");
  return *n;
}

const icu::Normalizer2& Nfd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU NFD unavailable");
  return *n;
}

bool IsApostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }

bool IsMark(UChar32 c) {
  const int8_t t = u_charType(c);
  return t == U_NON_SPACING_MARK || t == U_COMBINING_SPACING_MARK ||
         t == U_ENCLOSING_MARK;
}

void AppendUtf8(std::string& out, UChar32 c) {
  char buf[U8_MAX_LENGTH];
  int32_t len = 0;
  UBool err = false;
  U8_APPEND(buf, len, U8_MAX_LENGTH, c, err);
  out.append(buf, static_cast<size_t>(len));
}

}  // namespace

bool IsValidUtf8(std::string_view s) {
  int32_t i = 0;
  const auto n = static_cast<int32_t>(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  while (i < n) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) return false;
  }
  return true;
}

std::string ToNfc(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = Nfc().normalize(FromUtf8(s), status);
  if (U_FAILURE(status)) throw std::runtime_error("NFC normalization failed");
  return ToUtf8(out);
}

std::string ToLower(std::string_view s) {
  icu::UnicodeString u = FromUtf8(s);
  u.toLower(icu::Locale::getRoot());
  return ToUtf8(u);
}

std::string StripDiacritics(std::string_view s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString decomposed = Nfd().normalize(FromUtf8(s), status);
  if (U_FAILURE(status)) throw std::runtime_error("NFD normalization failed");
  icu::UnicodeString out;
  for (int32_t i = 0; i < decomposed.length();) {
    const UChar32 c = decomposed.char32At(i);
    if (!IsMark(c)) out.append(c);
    i += U16_LENGTH(c);
  }
  return ToUtf8(out);
}

size_t Length(std::string_view s) {
  size_t count = 0;
  for (const char ch : s) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++count;
  }
  return count;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string CollapseWhitespace(std::string_view s) {
  std::string out;
  bool pending_space = false;
  int32_t i = 0;
  const auto n = static_cast<int32_t>(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  while (i < n) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c >= 0 && u_isUWhiteSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.append(s.substr(static_cast<size_t>(start),
                        static_cast<size_t>(i - start)));
  }
  return out;
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n\f\v");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n\f\v");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitWords(std::string_view s) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

std::vector<RawToken> Tokenize(std::string_view s, bool keep_apostrophes) {
  std::vector<RawToken> out;
  std::string current;
  TokenClass current_cls = TokenClass::kLetters;
  auto flush = [&] {
    if (!current.empty()) out.push_back({std::move(current), current_cls});
    current.clear();
  };

  int32_t i = 0;
  const auto n = static_cast<int32_t>(s.size());
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  while (i < n) {
    UChar32 c;
    U8_NEXT(p, i, n, c);
    if (c < 0) continue;  // invalid byte

    if (u_isalpha(c) || (IsMark(c) && !current.empty() &&
                         current_cls == TokenClass::kLetters)) {
      if (current_cls != TokenClass::kLetters) flush();
      current_cls = TokenClass::kLetters;
      AppendUtf8(current, c);
      continue;
    }
    if (u_isdigit(c)) {
      if (current_cls != TokenClass::kDigits) flush();
      current_cls = TokenClass::kDigits;
      AppendUtf8(current, c);
      continue;
    }
    if (IsApostrophe(c) && keep_apostrophes && !current.empty() &&
        current_cls == TokenClass::kLetters && i < n) {
      // Keep only when followed by a letter.
      int32_t peek = i;
      UChar32 next;
      U8_NEXT(p, peek, n, next);
      if (next >= 0 && u_isalpha(next)) {
        AppendUtf8(current, c);
        continue;
      }
    }
    flush();
    if (u_ispunct(c) && !IsApostrophe(c)) {
      std::string punct;
      AppendUtf8(punct, c);
      out.push_back({std::move(punct), TokenClass::kPunctuation});
    }
  }
  flush();
  return out;
}

}  // namespace tea::text
