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

#include "tea/collocation.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "tea/error.h"
#include "tea/parallel.h"
#include "tea/text.h"
#include "tea/weighting.h"

namespace tea {

size_t SequenceCounts::Count(const TokenSeq& seq) const {
  const auto it = ngrams.find(seq);
  return it == ngrams.end() ? 0 : it->second;
}

size_t SequenceCounts::Unigram(const std::string& token) const {
  return Count(TokenSeq{token});
}

size_t SequenceCounts::Adjacency(const TokenSeq& seq,
                                 const std::string& next) const {
  TokenSeq joined = seq;
  joined.push_back(next);
  return Count(joined);
}

std::vector<std::string> SequenceCounts::Followers(const TokenSeq& seq) const {
  std::vector<std::string> out;
  // Extensions of seq sort directly after seq itself.
  for (auto it = ngrams.upper_bound(seq); it != ngrams.end(); ++it) {
    const TokenSeq& key = it->first;
    if (key.size() <= seq.size() ||
        !std::equal(seq.begin(), seq.end(), key.begin()))
      break;
    if (key.size() == seq.size() + 1 && it->second > 0)
      out.push_back(key.back());
  }
  return out;
}

SequenceCounts CountSequences(std::span<const Document> documents, int max_len,
                              int jobs) {
  if (max_len < 2) throw DomainError("max_len must be >= 2");
  std::vector<std::map<TokenSeq, size_t>> partial(documents.size());
  ParallelFor(documents.size(), jobs, [&](size_t d) {
    const auto& tokens = documents[d].tokens;
    for (size_t i = 0; i < tokens.size(); ++i) {
      TokenSeq seq;
      for (size_t len = 1; len <= static_cast<size_t>(max_len) &&
                           i + len <= tokens.size();
           ++len) {
        seq.push_back(tokens[i + len - 1]);
        ++partial[d][seq];
      }
    }
  });
  SequenceCounts counts;
  counts.max_len = max_len;
  for (size_t d = 0; d < documents.size(); ++d) {
    counts.total_tokens += documents[d].tokens.size();
    for (auto& [seq, n] : partial[d]) counts.ngrams[seq] += n;
  }
  return counts;
}

double PointwiseMutualInformation(size_t joint, size_t count_a, size_t count_b,
                                  size_t total, double log_base) {
  if (!(log_base > 0.0) || log_base == 1.0)
    throw DomainError(fmt::format("invalid log base {}", log_base));
  if (joint == 0 || count_a == 0 || count_b == 0 || total == 0)
    throw DomainError("mutual information needs positive counts");
  const double ratio = (static_cast<double>(joint) * static_cast<double>(total)) /
                       (static_cast<double>(count_a) * static_cast<double>(count_b));
  return std::log(ratio) / std::log(log_base);
}

std::optional<double> MutualInformation(const TokenSeq& seq,
                                        const std::string& next,
                                        const SequenceCounts& counts,
                                        double log_base) {
  if (!(log_base > 0.0) || log_base == 1.0)
    throw DomainError(fmt::format("invalid log base {}", log_base));
  const size_t joint = counts.Adjacency(seq, next);
  if (joint == 0) return std::nullopt;
  return PointwiseMutualInformation(joint, counts.Count(seq),
                                    counts.Unigram(next), counts.total_tokens,
                                    log_base);
}

void SortCompounds(std::vector<CompoundTerm>& compounds) {
  std::sort(compounds.begin(), compounds.end(),
            [](const CompoundTerm& a, const CompoundTerm& b) {
              if (a.tokens.size() != b.tokens.size())
                return a.tokens.size() > b.tokens.size();
              if (a.mi_score != b.mi_score) return a.mi_score > b.mi_score;
              return a.tokens < b.tokens;
            });
}

std::vector<CompoundTerm> ExtractCompoundTerms(
    const std::set<std::string>& simple_terms, const SequenceCounts& counts,
    const CompoundOptions& options, const SequenceCounts* scope) {
  if (options.max_len < 2) throw DomainError("max_len must be >= 2");
  if (options.max_len > counts.max_len)
    throw DomainError("sequence counts were collected with a smaller max_len");
  const SequenceCounts& source = scope != nullptr ? *scope : counts;

  std::vector<CompoundTerm> out;
  std::vector<TokenSeq> level;
  for (const auto& t : simple_terms) level.push_back({t});

  for (int n = 1; n < options.max_len && !level.empty(); ++n) {
    std::vector<TokenSeq> next_level;
    for (const auto& seq : level) {
      for (const auto& t : source.Followers(seq)) {
        if (!simple_terms.contains(t)) continue;
        const auto mi = MutualInformation(seq, t, counts, options.log_base);
        if (!mi || !(*mi > options.mi_threshold)) continue;
        TokenSeq extended = seq;
        extended.push_back(t);
        out.push_back({extended, *mi, counts.Count(extended)});
        next_level.push_back(std::move(extended));
      }
    }
    level = std::move(next_level);
  }
  SortCompounds(out);
  return out;
}

std::vector<CompoundTerm> ExtractCompoundTerms(
    const std::set<std::string>& simple_terms,
    std::span<const Document> documents, const CompoundOptions& options) {
  const SequenceCounts counts =
      CountSequences(documents, std::max(2, options.max_len));
  return ExtractCompoundTerms(simple_terms, counts, options);
}

std::string DisplayPhrase(const TokenSeq& stems,
                          const std::map<std::string, std::string>& surfaces) {
  std::vector<std::string> words;
  words.reserve(stems.size());
  for (const auto& s : stems) {
    const auto it = surfaces.find(s);
    words.push_back(it == surfaces.end() ? s : it->second);
  }
  return text::Join(words, " ");
}

std::string CompoundReportCsv(
    const std::vector<CompoundTerm>& compounds,
    const std::map<std::string, std::string>& surfaces) {
  std::string out = "compound,length,mi_score,support\n";
  for (const auto& c : compounds) {
    out += fmt::format("{},{},{:.6f},{}\n",
                       CsvField(DisplayPhrase(c.tokens, surfaces)),
                       c.tokens.size(), c.mi_score, c.support);
  }
  return out;
}

}  // namespace tea
