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
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "tea/error.h"
#include "tea/indexer.h"
#include "tea/weighting.h"
#include "test_support.h"

namespace tea {
namespace {

using testing::MakeDoc;

std::vector<Document> Abc() {
  return {MakeDoc("d1", {"a", "b", "a"}), MakeDoc("d2", {"b", "c"})};
}

TEST_CASE("corpus statistics by hand") {
  const auto docs = Abc();
  const CorpusStats s = ComputeStats(docs);
  CHECK(s.num_docs == 2);
  CHECK(s.avg_length == doctest::Approx(2.5));
  CHECK(s.Df("a") == 1);
  CHECK(s.Df("b") == 2);
  CHECK(s.Tf("a", 0) == 2);
  CHECK(s.Tf("a", 1) == 0);
  CHECK(s.Df("zz") == 0);

  const std::vector<Document> one{MakeDoc("x", {"x"})};
  const CorpusStats t = ComputeStats(one);
  CHECK(t.num_docs == 1);
  CHECK(t.avg_length == 1.0);
  CHECK(t.Df("x") == 1);
}

TEST_CASE("statistics errors") {
  CHECK_THROWS_AS(ComputeStats(std::vector<Document>{}), StatsError);
  const std::vector<Document> empty{MakeDoc("e", {})};
  CHECK_THROWS_AS(ComputeStats(empty), StatsError);
}

TEST_CASE("statistics agree with a brute-force count") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const auto docs = testing::RandomDocs(rng, 6, 8, 4);
    const CorpusStats s = ComputeStats(docs, 1 + round % 3);
    size_t total = 0;
    for (size_t j = 0; j < docs.size(); ++j) total += docs[j].tokens.size();
    CHECK(s.avg_length == doctest::Approx(double(total) / docs.size()));
    for (char ch = 'a'; ch < 'a' + 4; ++ch) {
      const std::string t(1, ch);
      size_t df = 0;
      for (size_t j = 0; j < docs.size(); ++j) {
        int tf = 0;
        for (const auto& tok : docs[j].tokens) tf += tok == t;
        CHECK(s.Tf(t, j) == tf);
        df += tf > 0;
      }
      CHECK(s.Df(t) == df);
    }
  }
}

TEST_CASE("hand-derived score") {
  const auto docs = Abc();
  const CorpusStats s = ComputeStats(docs);
  CHECK(TfidfScore("a", 0, s) == doctest::Approx(0.6327).epsilon(1e-4));
  CHECK(TfidfScore("a", 1, s) == 0.0);
  CHECK_THROWS_AS(TfidfScore("zz", 0, s), DomainError);
}

TEST_CASE("term in every document stays above the floor") {
  const double v = PivotedTfidf(1, 3, 3, 5, 5);
  CHECK(v > 0.4);
  CHECK(v - 0.4 == doctest::Approx(0.6 * (1 / 3.0) * std::log(5.5 / 5) /
                                   std::log(6.0)));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(PivotedTfidf(-1, 3, 3, 5, 1), DomainError);
  CHECK_THROWS_AS(PivotedTfidf(1, 3, 0, 5, 1), DomainError);
  CHECK_THROWS_AS(PivotedTfidf(1, 3, 3, 5, 0), DomainError);
  CHECK_THROWS_AS(PivotedTfidf(1, 3, 3, 5, 6), DomainError);
  CHECK_THROWS_AS(PivotedTfidf(4, 3, 3, 5, 1), DomainError);
}

TEST_CASE("threshold selection") {
  std::vector<TermCandidate> c{{"hémisphère", {}, 0.0333, false},
                               {"hémorragie", {}, 0.1533, false}};
  ApplyThreshold(c, 0.125);
  REQUIRE(c.size() == 2);
  CHECK(c[0].term == "hémorragie");
  CHECK(c[0].selected);
  CHECK_FALSE(c[1].selected);

  std::vector<TermCandidate> eq{{"b", {}, 0.2, false}, {"a", {}, 0.2, false}};
  ApplyThreshold(eq, 0.2);
  CHECK(eq[0].term == "a");
  CHECK_FALSE(eq[0].selected);  // strict

  const auto docs = Abc();
  const auto all = SelectSimpleTerms(docs, ComputeStats(docs), 0.0);
  CHECK(all.size() == 3);
  for (const auto& t : all) CHECK(t.selected);
}

TEST_CASE("raising the threshold never adds a simple term") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    const auto docs = testing::RandomDocs(rng, 6, 8, 5);
    const CorpusStats s = ComputeStats(docs);
    std::set<std::string> prev;
    bool first = true;
    for (double thr = 0.0; thr < 1.0; thr += 0.05) {
      std::set<std::string> cur;
      for (const auto& t : SelectSimpleTerms(docs, s, thr))
        if (t.selected) cur.insert(t.term);
      if (!first) {
        for (const auto& t : cur) CHECK(prev.contains(t));
      }
      prev = cur;
      first = false;
    }
  }
}

TEST_CASE("reference corpus averages") {
  const Pipeline p = LoadPipeline(testing::GoldenConfig());
  const PipelineTrace trace =
      ScoreTerms(LoadCorpus(testing::GoldenManifest()), p);
  std::map<std::string, double> avg;
  for (const auto& t : trace.simple_terms)
    avg[trace.surfaces.at(t.term)] = t.avg_score;
  CHECK(trace.stats.num_docs == 8);
  CHECK(trace.stats.Df(trace.simple_terms.front().term) == 8);
  // Hand evaluation of the weighting over the cleaned rows.
  CHECK(avg.at("hémorragie") == doctest::Approx(0.40575).epsilon(1e-4));
  CHECK(avg.at("méningée") == doctest::Approx(0.40575).epsilon(1e-4));
  CHECK(avg.at("hématome") == doctest::Approx(0.36575).epsilon(1e-4));
  CHECK(avg.at("droit") == doctest::Approx(0.18601).epsilon(1e-4));
  CHECK(avg.at("engagement") == doctest::Approx(0.18323).epsilon(1e-4));
  CHECK(avg.at("falcoriel") == doctest::Approx(0.06641).epsilon(1e-4));
  CHECK(avg.size() == 18);
}

TEST_CASE("term report csv") {
  const auto docs = Abc();
  const CorpusStats s = ComputeStats(docs);
  const auto terms = SelectSimpleTerms(docs, s, 0.3);
  const std::string csv = TermReportCsv(terms, s, SurfaceForms(docs));
  CHECK(csv.rfind("term,surface_form,n_i,avg_score,selected\n", 0) == 0);
  CHECK(csv.find("a,a,1,0.316378,true\n") != std::string::npos);
  CHECK(CsvField("x,y") == "\"x,y\"");
  CHECK(CsvField("plain") == "plain");
}

}  // namespace
}  // namespace tea
