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

#include "tea/weighting.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "tea/error.h"
#include "tea/parallel.h"

namespace tea {

int CorpusStats::Tf(const std::string& term, size_t doc) const {
  const auto it = tf.find(term);
  if (it == tf.end()) return 0;
  const auto jt = it->second.find(doc);
  return jt == it->second.end() ? 0 : jt->second;
}

size_t CorpusStats::Df(const std::string& term) const {
  const auto it = df.find(term);
  return it == df.end() ? 0 : it->second;
}

CorpusStats ComputeStats(std::span<const Document> documents, int jobs) {
  if (documents.empty()) throw StatsError("no documents");

  // Per-document counts in parallel, then an ordered merge.
  std::vector<std::map<std::string, int>> counts(documents.size());
  ParallelFor(documents.size(), jobs, [&](size_t j) {
    for (const auto& t : documents[j].tokens) ++counts[j][t];
  });

  CorpusStats stats;
  stats.num_docs = documents.size();
  stats.doc_lengths.reserve(documents.size());
  size_t total = 0;
  for (size_t j = 0; j < documents.size(); ++j) {
    stats.doc_lengths.push_back(documents[j].tokens.size());
    total += documents[j].tokens.size();
    stats.doc_index.emplace(documents[j].annotation_id, j);
    for (const auto& [term, c] : counts[j]) {
      stats.tf[term][j] = c;
      ++stats.df[term];
    }
  }
  if (total == 0)
    throw StatsError("all documents are empty; average length would be 0");
  stats.avg_length =
      static_cast<double>(total) / static_cast<double>(stats.num_docs);
  return stats;
}

double PivotedTfidf(int tf, double doc_length, double avg_length,
                    size_t num_docs, size_t df) {
  if (tf < 0) throw DomainError("negative term frequency");
  if (tf == 0) return 0.0;
  if (df == 0 || df > num_docs)
    throw DomainError(fmt::format("document frequency {} outside [1, {}]", df,
                                  num_docs));
  if (!(avg_length > 0.0)) throw DomainError("average length must be > 0");
  if (doc_length < tf) throw DomainError("document shorter than its tf");

  const double n = static_cast<double>(num_docs);
  const double local = tf / (tf + 0.5 + 1.5 * doc_length / avg_length);
  const double global =
      std::log((n + 0.5) / static_cast<double>(df)) / std::log(n + 1.0);
  return 0.4 + 0.6 * local * global;
}

double TfidfScore(const std::string& term, size_t doc,
                  const CorpusStats& stats) {
  const size_t df = stats.Df(term);
  if (df == 0) throw DomainError("term '" + term + "' does not occur in corpus");
  if (doc >= stats.num_docs)
    throw DomainError(fmt::format("document index {} out of range", doc));
  return PivotedTfidf(stats.Tf(term, doc),
                      static_cast<double>(stats.doc_lengths[doc]),
                      stats.avg_length, stats.num_docs, df);
}

void ApplyThreshold(std::vector<TermCandidate>& candidates, double threshold) {
  for (auto& c : candidates) c.selected = c.avg_score > threshold;
  std::sort(candidates.begin(), candidates.end(),
            [](const TermCandidate& a, const TermCandidate& b) {
              if (a.avg_score != b.avg_score) return a.avg_score > b.avg_score;
              return a.term < b.term;
            });
}

std::vector<TermCandidate> SelectSimpleTerms(
    const CorpusStats& stats, std::span<const size_t> doc_indices,
    double threshold) {
  std::map<std::string, TermCandidate> by_term;
  for (const size_t j : doc_indices) {
    if (j >= stats.num_docs)
      throw DomainError(fmt::format("document index {} out of range", j));
  }
  // Walk terms once; only terms present in the subset produce candidates.
  for (const auto& [term, postings] : stats.tf) {
    for (const size_t j : doc_indices) {
      if (!postings.contains(j)) continue;
      auto& c = by_term[term];
      c.term = term;
      c.per_doc_scores[j] = TfidfScore(term, j, stats);
    }
  }
  std::vector<TermCandidate> out;
  out.reserve(by_term.size());
  const double denom = static_cast<double>(doc_indices.size());
  for (auto& [term, c] : by_term) {
    double sum = 0.0;
    for (const auto& [j, s] : c.per_doc_scores) sum += s;
    c.avg_score = sum / denom;
    out.push_back(std::move(c));
  }
  ApplyThreshold(out, threshold);
  return out;
}

std::vector<TermCandidate> SelectSimpleTerms(
    std::span<const Document> documents, const CorpusStats& stats,
    double threshold) {
  std::vector<size_t> indices;
  indices.reserve(documents.size());
  for (const auto& d : documents) {
    const auto it = stats.doc_index.find(d.annotation_id);
    if (it == stats.doc_index.end())
      throw DomainError("document '" + d.annotation_id +
                        "' is not part of the statistics corpus");
    indices.push_back(it->second);
  }
  return SelectSimpleTerms(stats, indices, threshold);
}

std::map<std::string, std::string> SurfaceForms(
    std::span<const Document> documents) {
  std::map<std::string, std::map<std::string, int>> merged;
  for (const auto& d : documents) {
    for (const auto& [stem, counts] : d.surface_counts) {
      for (const auto& [surface, n] : counts) merged[stem][surface] += n;
    }
  }
  std::map<std::string, std::string> out;
  for (const auto& [stem, counts] : merged)
    out[stem] = DominantSurface(counts);
  return out;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string TermReportCsv(const std::vector<TermCandidate>& candidates,
                          const CorpusStats& stats,
                          const std::map<std::string, std::string>& surfaces) {
  std::string out = "term,surface_form,n_i,avg_score,selected\n";
  for (const auto& c : candidates) {
    const auto it = surfaces.find(c.term);
    const std::string surface = it == surfaces.end() ? c.term : it->second;
    out += fmt::format("{},{},{},{:.6f},{}\n", CsvField(c.term),
                       CsvField(surface), stats.Df(c.term), c.avg_score,
                       c.selected ? "true" : "false");
  }
  return out;
}

}  // namespace tea
