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

#include "tea/evaluation.h"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <sstream>

#include "tea/corpus.h"
#include "tea/error.h"
#include "tea/text.h"

namespace tea {

double AveragePrecision(const std::vector<std::string>& ranked,
                        const std::set<std::string>& relevant) {
  if (relevant.empty()) throw DomainError("relevant set is empty");
  double sum = 0.0;
  size_t hits = 0;
  for (size_t r = 0; r < ranked.size(); ++r) {
    if (!relevant.contains(ranked[r])) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(r + 1);
  }
  return sum / static_cast<double>(relevant.size());
}

MapResult MeanAveragePrecision(const RunResult& run, const Qrels& qrels) {
  if (qrels.empty()) throw DomainError("no queries in relevance judgments");
  MapResult result;
  double total = 0.0;
  for (const auto& [query, relevant] : qrels) {
    const auto it = run.find(query);
    double ap = 0.0;
    if (it == run.end())
      result.missing_queries.push_back(query);
    else
      ap = AveragePrecision(it->second, relevant);
    result.per_query[query] = ap;
    total += ap;
  }
  result.map = total / static_cast<double>(qrels.size());
  return result;
}

std::vector<PrPoint> PrCurve(const std::vector<std::string>& ranked,
                             const std::set<std::string>& relevant) {
  if (relevant.empty()) throw DomainError("relevant set is empty");
  std::vector<PrPoint> out;
  out.reserve(ranked.size());
  size_t hits = 0;
  for (size_t r = 0; r < ranked.size(); ++r) {
    if (relevant.contains(ranked[r])) ++hits;
    out.push_back({static_cast<double>(hits) / static_cast<double>(relevant.size()),
                   static_cast<double>(hits) / static_cast<double>(r + 1)});
  }
  return out;
}

std::vector<PrPoint> InterpolatedPrCurve(const std::vector<PrPoint>& curve) {
  std::vector<PrPoint> out;
  out.reserve(11);
  // Running max from the end of the curve.
  std::vector<double> tail_max(curve.size() + 1, 0.0);
  for (size_t i = curve.size(); i-- > 0;)
    tail_max[i] = std::max(tail_max[i + 1], curve[i].precision);
  for (int level = 0; level <= 10; ++level) {
    const double recall = level / 10.0;
    double best = 0.0;
    // Recall is non-decreasing along the curve; find the first point that
    // reaches this level (with a small slack for 0.1 * k rounding).
    for (size_t i = 0; i < curve.size(); ++i) {
      if (curve[i].recall + 1e-12 >= recall) {
        best = tail_max[i];
        break;
      }
    }
    out.push_back({recall, best});
  }
  return out;
}

namespace {

std::vector<std::vector<std::string>> ReadRows(std::string_view content,
                                               size_t min_fields,
                                               const char* what) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    auto fields = text::SplitWords(line.substr(0, hash));
    if (fields.empty()) continue;
    if (fields.size() < min_fields)
      throw ParseError(fmt::format("{} line needs at least {} fields", what,
                                   min_fields),
                       line_no);
    fields.push_back(std::to_string(line_no));
    rows.push_back(std::move(fields));
  }
  return rows;
}

template <typename T>
bool ParseNumber(const std::string& s, T& out) {
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

Qrels ParseQrels(std::string_view content) {
  Qrels qrels;
  std::set<std::string> seen_queries;
  for (const auto& row : ReadRows(content, 3, "qrels")) {
    const int line_no = std::stoi(row.back());
    if (row.size() != 4) throw ParseError("qrels line needs 3 fields", line_no);
    int rel = 0;
    if (!ParseNumber(row[2], rel) || rel < 0)
      throw ParseError("relevance must be a non-negative integer", line_no);
    seen_queries.insert(row[0]);
    if (rel > 0) qrels[row[0]].insert(row[1]);
  }
  for (const auto& q : seen_queries) {
    if (!qrels.contains(q))
      throw ValidationError("query '" + q + "' has no relevant image");
  }
  return qrels;
}

Qrels LoadQrels(const std::filesystem::path& path) {
  return ParseQrels(ReadUtf8File(path));
}

RunResult ParseRun(std::string_view content) {
  struct Entry {
    long rank;
    double score;
    std::string image;
  };
  std::map<std::string, std::vector<Entry>> entries;
  for (const auto& row : ReadRows(content, 4, "run")) {
    const int line_no = std::stoi(row.back());
    if (row.size() != 5) throw ParseError("run line needs 4 fields", line_no);
    Entry e{0, 0.0, row[1]};
    if (!ParseNumber(row[2], e.rank))
      throw ParseError("rank must be an integer", line_no);
    try {
      size_t used = 0;
      e.score = std::stod(row[3], &used);
      if (used != row[3].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("score must be a number", line_no);
    }
    entries[row[0]].push_back(std::move(e));
  }
  RunResult run;
  for (auto& [query, list] : entries) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Entry& a, const Entry& b) { return a.rank < b.rank; });
    std::set<std::string> seen;
    auto& ranked = run[query];
    for (const auto& e : list) {
      if (!seen.insert(e.image).second)
        throw ValidationError("image '" + e.image +
                              "' ranked twice for query '" + query + "'");
      ranked.push_back(e.image);
    }
  }
  return run;
}

RunResult LoadRun(const std::filesystem::path& path) {
  return ParseRun(ReadUtf8File(path));
}

std::string PrCurveCsv(const RunResult& run, const Qrels& qrels) {
  std::string out = "query_id,recall,precision\n";
  std::vector<double> macro(11, 0.0);
  static const std::vector<std::string> kEmpty;
  for (const auto& [query, relevant] : qrels) {
    const auto it = run.find(query);
    const auto curve =
        InterpolatedPrCurve(PrCurve(it == run.end() ? kEmpty : it->second, relevant));
    for (size_t i = 0; i < curve.size(); ++i) {
      macro[i] += curve[i].precision;
      out += fmt::format("{},{:.1f},{:.6f}\n", query, curve[i].recall,
                         curve[i].precision);
    }
  }
  for (size_t i = 0; i < macro.size(); ++i) {
    out += fmt::format("ALL,{:.1f},{:.6f}\n", i / 10.0,
                       qrels.empty() ? 0.0 : macro[i] / static_cast<double>(qrels.size()));
  }
  return out;
}

}  // namespace tea
