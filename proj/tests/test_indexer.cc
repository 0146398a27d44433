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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "tea/error.h"
#include "tea/indexer.h"
#include "test_support.h"

namespace tea {
namespace {

using testing::GoldenConfig;
using testing::GoldenManifest;
using testing::TempDir;

std::set<std::string> Keywords(const ImageIndex& index, const std::string& image) {
  std::set<std::string> out;
  for (const auto& k : index.per_image.at(image)) out.insert(k.keyword);
  return out;
}

ImageIndex GoldenIndex(int jobs = 1) {
  PipelineConfig c = GoldenConfig();
  c.jobs = jobs;
  return IndexComments(LoadCorpus(GoldenManifest()), LoadPipeline(c));
}

Pipeline TinyPipeline() {
  Pipeline p;
  p.config.tfidf_threshold = 0.0;
  p.thesaurus = ParseThesaurusXml(R"(<rdf:RDF
      xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
      xmlns:skos="http://www.w3.org/2004/02/skos/core#">
    <skos:Concept rdf:about="ab"><skos:prefLabel>alpha beta</skos:prefLabel></skos:Concept>
    <skos:Concept rdf:about="os"><skos:prefLabel>omega sigma</skos:prefLabel></skos:Concept>
    <skos:Concept rdf:about="t"><skos:prefLabel>tau</skos:prefLabel></skos:Concept>
  </rdf:RDF>)");
  return p;
}

TEST_CASE("golden keywords") {
  const ImageIndex index = GoldenIndex();
  CHECK(Keywords(index, "brain-ct") ==
        std::set<std::string>{"hématome fronto pariétale", "hémorragie méningée",
                              "inondation ventriculaire"});
  const auto& kws = index.per_image.at("brain-ct");
  for (const auto& k : kws) CHECK(k.compound);
  CHECK(index.inverted.at("hémorragie méningée") ==
        std::set<std::string>{"brain-ct"});
  const std::string report = KeywordReportText(index, nullptr);
  CHECK(report.find("Index Keywords : hématome fronto pariétale") !=
        std::string::npos);
}

TEST_CASE("default threshold gives the same keywords") {
  PipelineConfig c = GoldenConfig();
  c.tfidf_threshold = kDefaultTfidfThreshold;
  const ImageIndex index = IndexComments(LoadCorpus(GoldenManifest()), LoadPipeline(c));
  CHECK(Keywords(index, "brain-ct") ==
        std::set<std::string>{"hématome fronto pariétale", "hémorragie méningée",
                              "inondation ventriculaire"});
}

TEST_CASE("degenerate corpora") {
  const Pipeline p = TinyPipeline();
  CHECK_THROWS_AS(IndexComments(Corpus{}, p), PipelineError);
  Pipeline stop = p;
  stop.cleaning.stopwords = {"le", "la", "de"};
  const Corpus only_stop({{"i", "i", std::nullopt}},
                         {{"a", "i", std::nullopt, "le la de"}});
  CHECK_THROWS_AS(IndexComments(only_stop, stop), PipelineError);
}

TEST_CASE("images with disjoint vocabularies") {
  const Corpus corpus(
      {{"A", "a", std::nullopt}, {"B", "b", std::nullopt}},
      {{"a1", "A", std::nullopt, "alpha beta gamma"},
       {"a2", "A", std::nullopt, "alpha beta delta"},
       {"b1", "B", std::nullopt, "omega sigma"},
       {"b2", "B", std::nullopt, "omega sigma tau"}});
  const ImageIndex index = IndexComments(corpus, TinyPipeline());
  CHECK(Keywords(index, "A") == std::set<std::string>{"alpha beta"});
  CHECK(Keywords(index, "B") == std::set<std::string>{"omega sigma", "tau"});
  for (const auto& [kw, images] : index.inverted) CHECK(images.size() == 1);
  CHECK(index.inverted == BuildInverted(index.per_image));
}

TEST_CASE("persistence round trip") {
  TempDir dir;
  const ImageIndex index = GoldenIndex();
  SaveIndex(index, dir.path() / "i.json");
  CHECK(LoadIndex(dir.path() / "i.json") == index);

  ImageIndex empty;
  empty.per_image["x"] = {};
  empty.corpus_fingerprint = "f";
  CHECK(DeserializeIndex(SerializeIndex(empty)) == empty);
}

TEST_CASE("corrupted index files") {
  const std::string good = SerializeIndex(GoldenIndex());
  const auto pos = good.find("\"checksum\": \"") + 13;
  std::string flipped = good;
  flipped[pos] = flipped[pos] == '0' ? '1' : '0';
  CHECK_THROWS_AS(DeserializeIndex(flipped), IntegrityError);
  CHECK_THROWS_AS(DeserializeIndex(good.substr(0, good.size() / 2)),
                  IntegrityError);

  std::string tampered = good;
  const auto kw = tampered.find("inondation");
  tampered[kw] = 'I';
  CHECK_THROWS_AS(DeserializeIndex(tampered), IntegrityError);

  auto j = nlohmann::json::parse(good);
  j["format_version"] = 99;
  CHECK_THROWS_AS(DeserializeIndex(j.dump()), VersionError);
}

TEST_CASE("index bytes are deterministic") {
  CHECK(SerializeIndex(GoldenIndex(1)) == SerializeIndex(GoldenIndex(1)));
  CHECK(SerializeIndex(GoldenIndex(1)) == SerializeIndex(GoldenIndex(4)));
}

TEST_CASE("search on the golden index") {
  const ImageIndex index = GoldenIndex();
  auto hits = Search(index, "hémorragie méningée");
  REQUIRE_FALSE(hits.empty());
  CHECK(hits[0].image_id == "brain-ct");
  CHECK(hits[0].keywords == std::vector<std::string>{"hémorragie méningée"});
  hits = Search(index, "Hémorragies");
  REQUIRE(hits.size() == 1);
  CHECK(Search(index, "de la le").empty());
}

TEST_CASE("search ranking") {
  ImageIndex index;
  index.per_image["A"] = {{"xx", {"xx"}, 0.1, "c1", false},
                          {"yy", {"yy"}, 0.1, "c2", false}};
  index.per_image["B"] = {{"xx", {"xx"}, 0.9, "c1", false}};
  index.inverted = BuildInverted(index.per_image);
  const auto hits = Search(index, "xx yy");
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].image_id == "A");
  CHECK(hits[0].matched == 2);
  CHECK(hits[1].image_id == "B");
}

TEST_CASE("raising a threshold never widens the covered stems") {
  // Dropping a compound can surface one of its words as a simple keyword,
  // so the keyword set itself is not monotone; the stems it covers are.
  const Corpus corpus = LoadCorpus(GoldenManifest());
  for (const bool vary_mi : {false, true}) {
    std::set<std::string> prev;
    bool first = true;
    for (double t = 0.0; t <= 1.5; t += 0.05) {
      PipelineConfig c = GoldenConfig();
      if (vary_mi) c.mi_threshold = t;
      else c.tfidf_threshold = t;
      const ImageIndex index = IndexComments(corpus, LoadPipeline(c));
      std::set<std::string> covered;
      for (const auto& k : index.per_image.at("brain-ct"))
        covered.insert(k.stems.begin(), k.stems.end());
      if (!first) {
        for (const auto& s : covered) CHECK(prev.contains(s));
      }
      prev = covered;
      first = false;
    }
  }
}

TEST_CASE("config json") {
  PipelineConfig c = GoldenConfig();
  c.mi_threshold = 0.3;
  c.match_policy.allow_token_subset = true;
  PipelineConfig back;
  ApplyPipelineConfigJson(PipelineConfigToJson(c), back);
  CHECK(PipelineConfigToJson(back) == PipelineConfigToJson(c));
  CHECK_THROWS_AS(ApplyPipelineConfigJson({{"tfidf_treshold", 0.2}}, back),
                  ConfigError);
  PipelineConfig bad;
  bad.max_compound_len = 1;
  CHECK_THROWS_AS(ValidatePipelineConfig(bad), ConfigError);
  bad = {};
  bad.mi_log_base = 1.0;
  CHECK_THROWS_AS(ValidatePipelineConfig(bad), ConfigError);
  CHECK_THROWS_AS(LoadPipeline(PipelineConfig{}), ConfigError);
}

}  // namespace
}  // namespace tea
