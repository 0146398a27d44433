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

// Corpus statistics and pivoted tf.idf weighting of simple terms.
//
// For term i in document j:
//
//   score = 0.4 + 0.6 * tf / (tf + 0.5 + 1.5 * len_j / avg_len)
//                     * log((N + 0.5) / n_i) / log(N + 1)
//
// and score = 0 when the term does not occur in the document. A term is
// selected when its score averaged over all documents (absent documents
// counting as 0) is strictly greater than the threshold.

#ifndef TEA_WEIGHTING_H_
#define TEA_WEIGHTING_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tea/preprocess.h"

namespace tea {

inline constexpr double kDefaultTfidfThreshold = 0.125;

struct CorpusStats {
  size_t num_docs = 0;                 // N
  std::vector<size_t> doc_lengths;     // len_j, by document index
  double avg_length = 0.0;             // mean of doc_lengths
  std::map<std::string, size_t> df;    // n_i
  // term -> document index -> occurrences (only non-zero entries)
  std::map<std::string, std::map<size_t, int>> tf;
  std::map<std::string, size_t> doc_index;  // annotation_id -> index

  int Tf(const std::string& term, size_t doc) const;
  size_t Df(const std::string& term) const;

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Throws StatsError if there are no documents or every document is empty.
CorpusStats ComputeStats(std::span<const Document> documents, int jobs = 1);

// The weighting formula on raw quantities. Requires tf >= 0, len >= tf,
// avg_len > 0, 1 <= df <= num_docs; throws DomainError otherwise.
double PivotedTfidf(int tf, double doc_length, double avg_length,
                    size_t num_docs, size_t df);

// Score of a term in the document with the given index. Throws DomainError
// when the term never occurs in the corpus.
double TfidfScore(const std::string& term, size_t doc,
                  const CorpusStats& stats);

struct TermCandidate {
  std::string term;
  std::map<size_t, double> per_doc_scores;  // non-zero scores only
  double avg_score = 0.0;
  bool selected = false;

  friend bool operator==(const TermCandidate&, const TermCandidate&) = default;
};

// Sets `selected` (avg_score > threshold) and orders by avg_score
// descending, ties by term.
void ApplyThreshold(std::vector<TermCandidate>& candidates, double threshold);

// One candidate per distinct term of `documents`, which must all be part of
// the corpus `stats` was computed on. Averages are over documents.size().
std::vector<TermCandidate> SelectSimpleTerms(
    std::span<const Document> documents, const CorpusStats& stats,
    double threshold = kDefaultTfidfThreshold);

// Same, over a subset of document indices.
std::vector<TermCandidate> SelectSimpleTerms(
    const CorpusStats& stats, std::span<const size_t> doc_indices,
    double threshold = kDefaultTfidfThreshold);

// stem -> dominant surface form across the given documents.
std::map<std::string, std::string> SurfaceForms(
    std::span<const Document> documents);

// CSV with header "term,surface_form,n_i,avg_score,selected".
std::string TermReportCsv(const std::vector<TermCandidate>& candidates,
                          const CorpusStats& stats,
                          const std::map<std::string, std::string>& surfaces);

// Quotes a CSV field when needed.
std::string CsvField(const std::string& s);

}  // namespace tea

#endif  // TEA_WEIGHTING_H_
