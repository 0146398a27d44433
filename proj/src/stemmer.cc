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

#include <charconv>
#include <set>
#include <sstream>

#include "tea/error.h"
#include "tea/preprocess.h"
#include "tea/text.h"

namespace tea {

std::string ApplyPhase(std::string_view token, const StemPhase& phase) {
  const StemRule* best = nullptr;
  size_t best_len = 0;
  const size_t token_len = text::Length(token);
  for (const auto& rule : phase.rules) {
    if (!text::EndsWith(token, rule.suffix)) continue;
    const size_t suffix_len = text::Length(rule.suffix);
    const size_t residual = token_len - suffix_len;
    if (residual < static_cast<size_t>(rule.min_stem)) continue;
    if (residual == 0 && rule.replacement.empty()) continue;
    if (best == nullptr || suffix_len > best_len) {
      best = &rule;
      best_len = suffix_len;
    }
  }
  std::string out(token);
  if (best != nullptr) {
    out.resize(out.size() - best->suffix.size());
    out += best->replacement;
  }
  return out;
}

std::string Stem(std::string_view token, const StemmerRuleset& ruleset) {
  std::string current(token);
  for (const auto& phase : ruleset.phases) current = ApplyPhase(current, phase);
  return current;
}

StemmerRuleset ParseRuleset(std::string_view content) {
  StemmerRuleset ruleset;
  std::set<std::string> phase_suffixes;
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = text::SplitWords(line.substr(0, line.find('#')));
    if (fields.empty()) continue;

    if (fields[0] == "language") {
      if (fields.size() != 2) throw ParseError("expected 'language <tag>'", line_no);
      ruleset.language = fields[1];
      continue;
    }
    if (fields[0] == "phase") {
      int n = 0;
      if (fields.size() != 2 ||
          std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(),
                          n)
                  .ec != std::errc())
        throw ParseError("expected 'phase <n>'", line_no);
      const int expected = static_cast<int>(ruleset.phases.size()) + 1;
      if (n != expected)
        throw ParseError("phase " + std::to_string(n) +
                             " out of order (expected phase " +
                             std::to_string(expected) + ")",
                         line_no);
      ruleset.phases.push_back({n, {}});
      phase_suffixes.clear();
      continue;
    }

    if (ruleset.phases.empty())
      throw ParseError("rule before the first 'phase' header", line_no);
    if (fields.size() < 2 || fields[1] != "->")
      throw ParseError("expected 'suffix -> replacement [minstem=<k>]'",
                       line_no);
    StemRule rule;
    rule.suffix = text::ToNfc(fields[0]);
    size_t next = 2;
    if (next < fields.size() && !fields[next].starts_with("minstem=")) {
      rule.replacement = text::ToNfc(fields[next]);
      ++next;
    }
    if (next < fields.size()) {
      const std::string& cond = fields[next];
      if (!cond.starts_with("minstem="))
        throw ParseError("unexpected field '" + cond + "'", line_no);
      const char* first = cond.data() + 8;
      const char* last = cond.data() + cond.size();
      const auto res = std::from_chars(first, last, rule.min_stem);
      if (res.ec != std::errc() || res.ptr != last || rule.min_stem < 1)
        throw ParseError("minstem must be a positive integer", line_no);
      ++next;
    }
    if (next != fields.size())
      throw ParseError("trailing fields after rule", line_no);
    if (text::Length(rule.replacement) > text::Length(rule.suffix))
      throw ValidationError("rule '" + rule.suffix + " -> " + rule.replacement +
                            "' would lengthen tokens (line " +
                            std::to_string(line_no) + ")");
    if (!phase_suffixes.insert(rule.suffix).second)
      throw ValidationError("duplicate suffix '" + rule.suffix + "' in phase " +
                            std::to_string(ruleset.phases.back().number) +
                            " (line " + std::to_string(line_no) + ")");
    ruleset.phases.back().rules.push_back(std::move(rule));
  }
  return ruleset;
}

StemmerRuleset LoadRuleset(const std::filesystem::path& path) {
  return ParseRuleset(ReadUtf8File(path));
}

std::string FormatRuleset(const StemmerRuleset& ruleset) {
  std::ostringstream out;
  if (!ruleset.language.empty()) out << "language " << ruleset.language << "\n";
  for (const auto& phase : ruleset.phases) {
    out << "phase " << phase.number << "\n";
    for (const auto& rule : phase.rules) {
      out << rule.suffix << " ->";
      if (!rule.replacement.empty()) out << " " << rule.replacement;
      out << " minstem=" << rule.min_stem << "\n";
    }
  }
  return out.str();
}

}  // namespace tea
