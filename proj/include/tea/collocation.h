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

// Compound-term extraction by mutual information of adjacent words.
//
// Starting from the selected simple terms (length 1), a sequence s of
// length n is extended by a selected term t that immediately follows it
// somewhere in the corpus when
//
//   MI(s, t) = log_b( P(s t) / (P(s) P(t)) ) > threshold
//
// with maximum-likelihood estimates P(x) = count(x) / W over the W cleaned,
// stemmed tokens of the corpus. Sequences never cross document boundaries.

#ifndef TEA_COLLOCATION_H_
#define TEA_COLLOCATION_H_

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tea/preprocess.h"

namespace tea {

inline constexpr double kDefaultMiThreshold = 0.15;
inline constexpr double kDefaultMiLogBase = 10.0;
inline constexpr int kDefaultMaxCompoundLen = 4;

using TokenSeq = std::vector<std::string>;

struct SequenceCounts {
  size_t total_tokens = 0;  // W
  int max_len = 0;
  // Every contiguous sequence of length 1..max_len inside one document.
  std::map<TokenSeq, size_t> ngrams;

  size_t Count(const TokenSeq& seq) const;
  size_t Unigram(const std::string& token) const;
  // Occurrences of `seq` immediately followed by `next`.
  size_t Adjacency(const TokenSeq& seq, const std::string& next) const;
  // Tokens t with Adjacency(seq, t) > 0, in lexicographic order.
  std::vector<std::string> Followers(const TokenSeq& seq) const;
};

// Throws DomainError when max_len < 2.
SequenceCounts CountSequences(std::span<const Document> documents, int max_len,
                              int jobs = 1);

// log_base(joint * W / (count_a * count_b)). All counts must be positive.
double PointwiseMutualInformation(size_t joint, size_t count_a, size_t count_b,
                                  size_t total, double log_base);

// MI of `seq` followed by `next`. std::nullopt when the pair never occurs
// (no value is made up for unseen pairs). Throws DomainError for a log base
// that is not positive or equals 1.
std::optional<double> MutualInformation(const TokenSeq& seq,
                                        const std::string& next,
                                        const SequenceCounts& counts,
                                        double log_base = kDefaultMiLogBase);

struct CompoundTerm {
  TokenSeq tokens;
  double mi_score = 0.0;  // score of the last extension step
  size_t support = 0;     // corpus occurrences of the full sequence

  friend bool operator==(const CompoundTerm&, const CompoundTerm&) = default;
};

struct CompoundOptions {
  double mi_threshold = kDefaultMiThreshold;
  double log_base = kDefaultMiLogBase;
  int max_len = kDefaultMaxCompoundLen;
};

// Iterative n -> n+1 construction. `simple_terms` is the selected list L1.
// Candidates come from `scope` (defaults to `counts`); MI is always scored
// against `counts`. Result: every compound of length >= 2, longest first,
// then by mi_score descending, then by tokens.
std::vector<CompoundTerm> ExtractCompoundTerms(
    const std::set<std::string>& simple_terms, const SequenceCounts& counts,
    const CompoundOptions& options = {},
    const SequenceCounts* scope = nullptr);

// Convenience wrapper: counts the documents itself.
std::vector<CompoundTerm> ExtractCompoundTerms(
    const std::set<std::string>& simple_terms,
    std::span<const Document> documents, const CompoundOptions& options = {});

// Sort order used by ExtractCompoundTerms.
void SortCompounds(std::vector<CompoundTerm>& compounds);

// CSV with header "compound,length,mi_score,support". Tokens are displayed
// through `surfaces` (stem -> surface) when an entry exists.
std::string CompoundReportCsv(
    const std::vector<CompoundTerm>& compounds,
    const std::map<std::string, std::string>& surfaces);

std::string DisplayPhrase(const TokenSeq& stems,
                          const std::map<std::string, std::string>& surfaces);

}  // namespace tea

#endif  // TEA_COLLOCATION_H_
