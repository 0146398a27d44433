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

// Independent reference implementations used as test oracles.

#ifndef TEA_TESTS_ORACLES_H_
#define TEA_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tea/collocation.h"
#include "tea/preprocess.h"

namespace tea::testing {

// Reference: every contiguous in-document window whose tokens are all simple
// terms and whose every prefix extension clears the threshold.
inline std::map<TokenSeq, double> BruteForceCompounds(
    const std::vector<Document>& docs, const std::set<std::string>& simple,
    double threshold, double base, int max_len) {
  std::map<TokenSeq, size_t> count;
  size_t total = 0;
  for (const auto& d : docs) {
    total += d.tokens.size();
    for (size_t i = 0; i < d.tokens.size(); ++i)
      for (size_t n = 1; n <= static_cast<size_t>(max_len) && i + n <= d.tokens.size(); ++n)
        ++count[TokenSeq(d.tokens.begin() + i, d.tokens.begin() + i + n)];
  }
  std::map<TokenSeq, double> out;
  for (const auto& [seq, c] : count) {
    if (seq.size() < 2) continue;
    bool ok = true;
    double last = 0;
    for (const auto& t : seq) ok = ok && simple.contains(t);
    for (size_t k = 2; ok && k <= seq.size(); ++k) {
      const TokenSeq prefix(seq.begin(), seq.begin() + k - 1);
      const TokenSeq whole(seq.begin(), seq.begin() + k);
      const double mi = std::log(double(count[whole]) * total /
                                 (double(count[prefix]) * count[{seq[k - 1]}])) /
                        std::log(base);
      ok = mi > threshold;
      last = mi;
    }
    if (ok) out[seq] = last;
  }
  return out;
}

// trec_eval style: sorted ranks of the relevant items, precision at each.
inline double ReferenceAveragePrecision(const std::vector<std::string>& ranked,
                                        const std::set<std::string>& relevant) {
  std::vector<size_t> ranks;
  for (size_t i = 0; i < ranked.size(); ++i)
    if (relevant.count(ranked[i])) ranks.push_back(i + 1);
  std::sort(ranks.begin(), ranks.end());
  double sum = 0;
  for (size_t k = 0; k < ranks.size(); ++k)
    sum += static_cast<double>(k + 1) / static_cast<double>(ranks[k]);
  return relevant.empty() ? 0.0 : sum / static_cast<double>(relevant.size());
}

}  // namespace tea::testing

#endif  // TEA_TESTS_ORACLES_H_
