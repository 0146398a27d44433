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

// Retrieval metrics over ranked image lists: AP, MAP and precision/recall
// curves, plus readers for whitespace-separated qrels and run files.

#ifndef TEA_EVALUATION_H_
#define TEA_EVALUATION_H_

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tea {

// query_id -> relevant image ids (never empty).
using Qrels = std::map<std::string, std::set<std::string>>;
// query_id -> ranked image ids (no duplicates).
using RunResult = std::map<std::string, std::vector<std::string>>;

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;

  friend bool operator==(const PrPoint&, const PrPoint&) = default;
};

// Sum of precision@r over the ranks r holding a relevant image, divided by
// |relevant|. Throws DomainError when `relevant` is empty.
double AveragePrecision(const std::vector<std::string>& ranked,
                        const std::set<std::string>& relevant);

struct MapResult {
  double map = 0.0;
  std::map<std::string, double> per_query;
  std::vector<std::string> missing_queries;  // scored as AP 0
};

// Mean AP over the queries of `qrels`. Throws DomainError for empty qrels.
MapResult MeanAveragePrecision(const RunResult& run, const Qrels& qrels);

// One (recall, precision) point per rank position.
std::vector<PrPoint> PrCurve(const std::vector<std::string>& ranked,
                             const std::set<std::string>& relevant);

// Precision at recall levels 0.0, 0.1, ..., 1.0, each the maximum
// precision reached at any recall >= the level (0 when none).
std::vector<PrPoint> InterpolatedPrCurve(const std::vector<PrPoint>& curve);

// Qrels lines: "query_id image_id relevance". Relevance 0 lines are kept
// out of the relevant set; a query with no relevant image is an error.
Qrels ParseQrels(std::string_view content);
Qrels LoadQrels(const std::filesystem::path& path);

// Run lines: "query_id image_id rank score", ordered by rank per query.
// Duplicate images within a query are rejected.
RunResult ParseRun(std::string_view content);
RunResult LoadRun(const std::filesystem::path& path);

// CSV "query_id,recall,precision" with every query's interpolated curve and
// a macro-averaged curve under query id "ALL".
std::string PrCurveCsv(const RunResult& run, const Qrels& qrels);

}  // namespace tea

#endif  // TEA_EVALUATION_H_
