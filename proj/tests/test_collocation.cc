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

#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "tea/collocation.h"
#include "tea/error.h"
#include "tea/indexer.h"
#include "oracles.h"
#include "test_support.h"

namespace tea {
namespace {

using testing::MakeDoc;

TEST_CASE("sequence counts by hand") {
  const std::vector<Document> docs{MakeDoc("d1", {"a", "b", "a"}),
                                   MakeDoc("d2", {"b", "c"})};
  const auto c = CountSequences(docs, 2);
  CHECK(c.total_tokens == 5);
  CHECK(c.Unigram("b") == 2);
  CHECK(c.Adjacency({"a"}, "b") == 1);
  CHECK(c.Adjacency({"b"}, "c") == 1);
  CHECK(c.Adjacency({"a"}, "c") == 0);
  CHECK(c.Followers({"b"}) == std::vector<std::string>{"a", "c"});
}

TEST_CASE("sequences never cross documents") {
  const std::vector<Document> docs{MakeDoc("d1", {"x"}), MakeDoc("d2", {"y"})};
  const auto c = CountSequences(docs, 3);
  CHECK(c.Adjacency({"x"}, "y") == 0);
  CHECK(c.Followers({"x"}).empty());
  CHECK_THROWS_AS(CountSequences(docs, 1), DomainError);
}

TEST_CASE("mutual information values") {
  CHECK(PointwiseMutualInformation(1, 2, 2, 5, 10) ==
        doctest::Approx(0.09691).epsilon(1e-4));
  CHECK(std::abs(PointwiseMutualInformation(2, 4, 5, 10, 10)) < 1e-12);
  CHECK(PointwiseMutualInformation(3, 3, 3, 12, 10) ==
        doctest::Approx(std::log10(4.0)));
  const std::vector<Document> docs{MakeDoc("d1", {"a", "b", "a"}),
                                   MakeDoc("d2", {"b", "c"})};
  const auto c = CountSequences(docs, 2);
  CHECK_FALSE(MutualInformation({"a"}, "c", c).has_value());
  CHECK_THROWS_AS(MutualInformation({"a"}, "b", c, 1.0), DomainError);
}

TEST_CASE("threshold is strict and infinity keeps nothing") {
  const std::vector<Document> docs{MakeDoc("d1", {"x", "y", "z", "w"})};
  const std::set<std::string> simple{"x", "y", "z", "w"};
  // MI(x, y) = log10(4)
  CompoundOptions at{std::log10(4.0), 10, 4};
  CHECK(ExtractCompoundTerms(simple, docs, at).empty());
  at.mi_threshold = std::log10(4.0) - 1e-9;
  CHECK(ExtractCompoundTerms(simple, docs, at).size() == 6);
  at.mi_threshold = std::numeric_limits<double>::infinity();
  CHECK(ExtractCompoundTerms(simple, docs, at).empty());
}

TEST_CASE("only selected terms extend a compound") {
  const std::vector<Document> docs{MakeDoc("d1", {"x", "y", "z"})};
  const auto out = ExtractCompoundTerms({"x", "y"}, docs);
  REQUIRE(out.size() == 1);
  CHECK(out[0].tokens == TokenSeq{"x", "y"});
  CHECK(out[0].support == 1);
}

TEST_CASE("extraction agrees with the brute-force oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> thr(0.0, 0.8);
  for (int round = 0; round < 300; ++round) {
    auto docs = testing::RandomDocs(rng, 4, 8, 5);
    size_t total = 0;
    for (const auto& d : docs) total += d.tokens.size();
    if (total > 30) continue;
    std::set<std::string> simple;
    for (char ch = 'a'; ch < 'e'; ++ch)
      if (rng() % 4 != 0) simple.insert(std::string(1, ch));
    const double t = thr(rng);
    const int max_len = 2 + static_cast<int>(rng() % 3);
    const auto got = ExtractCompoundTerms(simple, docs, {t, 10, max_len});
    const auto want = testing::BruteForceCompounds(docs, simple, t, 10, max_len);
    std::map<TokenSeq, double> got_map;
    for (const auto& c : got) got_map[c.tokens] = c.mi_score;
    CHECK(got_map.size() == got.size());
    REQUIRE(got_map.size() == want.size());
    for (const auto& [seq, mi] : want) {
      REQUIRE(got_map.contains(seq));
      CHECK(got_map[seq] == doctest::Approx(mi).epsilon(1e-12));
    }
  }
}

TEST_CASE("compound order") {
  std::vector<CompoundTerm> c{{{"a", "b"}, 0.5, 1},
                              {{"a", "b", "c"}, 0.2, 1},
                              {{"b", "c"}, 0.9, 1},
                              {{"a", "c"}, 0.9, 1}};
  SortCompounds(c);
  CHECK(c[0].tokens.size() == 3);
  CHECK(c[1].tokens == TokenSeq{"a", "c"});
  CHECK(c[2].tokens == TokenSeq{"b", "c"});
  CHECK(c[3].tokens == TokenSeq{"a", "b"});
}

TEST_CASE("reference corpus compounds") {
  const Pipeline p = LoadPipeline(testing::GoldenConfig());
  const PipelineTrace trace =
      ScoreTerms(LoadCorpus(testing::GoldenManifest()), p);
  std::map<std::string, double> mi;
  for (const auto& c : trace.compounds)
    mi[DisplayPhrase(c.tokens, trace.surfaces)] = c.mi_score;
  CHECK(mi.contains("hématome fronto pariétale"));
  CHECK(mi.at("hémorragie méningée") == doctest::Approx(std::log10(7.625)));
  CHECK(mi.contains("inondation ventriculaire"));

  const auto counts = CountSequences(trace.documents, 2);
  CHECK(trace.simple_terms[0].term == "hémorragi");
  CHECK(counts.Adjacency({"hémorragi"}, "méning") == 8);
}

TEST_CASE("compound report csv") {
  const std::vector<CompoundTerm> c{{{"hémorragi", "méning"}, 0.882240, 8}};
  const std::map<std::string, std::string> surf{{"hémorragi", "hémorragie"},
                                                {"méning", "méningée"}};
  CHECK(CompoundReportCsv(c, surf) ==
        "compound,length,mi_score,support\nhémorragie méningée,2,0.882240,8\n");
}

}  // namespace
}  // namespace tea
