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

#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "tea/error.h"
#include "tea/thesaurus.h"
#include "test_support.h"

namespace tea {
namespace {

std::vector<std::string> Texts(const std::vector<Label>& labels) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l.text);
  return out;
}

Thesaurus Mini() {
  return ParseThesaurus(testing::SourceDir() / "data" / "thesaurus" /
                        "mini_mesh_fr.rdf");
}

TermInput Term(TokenSeq stems, std::string display, double score = 1.0) {
  return {std::move(stems), std::move(display), score};
}

TEST_CASE("skos excerpt") {
  const Thesaurus th = ParseThesaurus(testing::TestData() / "skos_excerpt.rdf");
  REQUIRE(th.concepts.size() == 2);
  const Concept& cancer = th.concepts.at("http://www.fao.org/aos/agrovoc/c_1246");
  CHECK(Texts(cancer.pref_labels) == std::vector<std::string>{"Cancer (genre)"});
  CHECK(cancer.pref_labels[0].lang == "fr");
  CHECK(cancer.alt_labels.empty());

  const Concept& adrenal = th.concepts.at("fmesh:D000306");
  CHECK(Texts(adrenal.pref_labels) ==
        std::vector<std::string>{"Adrenal Cortex Neoplasms"});
  CHECK(Texts(adrenal.alt_labels) ==
        std::vector<std::string>{"Adrenal Cortex Cancer", "Cancer of Adrenal Cortex",
                                 "Cancer of the Adrenal Cortex",
                                 "Neoplasms, Adrenal Cortex"});
  CHECK(Texts(adrenal.hidden_labels) ==
        std::vector<std::string>{
            "Adrenal Cortex Cancers", "Adrenal Cortex Neoplasm",
            "Adrenocortical Cancers", "Cancer, Adrenal Cortex",
            "Cancer, Adrenocortical", "Cancers, Adrenal Cortex",
            "Cancers, Adrenocortical"});
  CHECK(adrenal.scope_note == "Tumors or cancers of the ADRENAL CORTEX.");
  CHECK(th.LabelCount() == 13);
  CHECK(th.skipped == 0);
}

TEST_CASE("label index round trip") {
  for (const auto& th :
       {ParseThesaurus(testing::TestData() / "skos_excerpt.rdf"), Mini()}) {
    CHECK(ParseLabelIndex(FormatLabelIndex(th.label_index)) == th.label_index);
    CHECK(BuildLabelIndex(th.concepts) == th.label_index);
  }
}

TEST_CASE("empty and malformed documents") {
  CHECK(ParseThesaurusXml(R"(<rdf:RDF xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"/>)")
            .concepts.empty());
  try {
    ParseThesaurusXml("<a>\n<b>\n</a>");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() > 0);
  }
}

TEST_CASE("shared labels map to both concepts") {
  const Thesaurus th = ParseThesaurusXml(R"(<rdf:RDF
      xmlns:rdf="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
      xmlns:skos="http://www.w3.org/2004/02/skos/core#">
    <skos:Concept rdf:about="c1"><skos:prefLabel>Tumeur</skos:prefLabel></skos:Concept>
    <skos:Concept rdf:about="c2"><skos:prefLabel>Néoplasme</skos:prefLabel>
      <skos:altLabel>tumeur</skos:altLabel></skos:Concept>
    <skos:Concept rdf:about="c3"><skos:altLabel>orphan</skos:altLabel></skos:Concept>
  </rdf:RDF>)");
  CHECK(th.label_index.at("tumeur") == std::set<std::string>{"c1", "c2"});
  CHECK(th.concepts.size() == 2);
  CHECK(th.skipped == 1);
  CHECK(th.warnings.size() == 1);
}

TEST_CASE("prefixes are resolved through their namespace") {
  const Thesaurus th = ParseThesaurusXml(R"(<r:RDF
      xmlns:r="http://www.w3.org/1999/02/22-rdf-syntax-ns#"
      xmlns:k="http://www.w3.org/2004/02/skos/core#">
    <k:Concept r:about="x"><k:prefLabel>Label</k:prefLabel></k:Concept>
  </r:RDF>)");
  CHECK(th.concepts.contains("x"));
}

TEST_CASE("label normalization") {
  CHECK(NormalizeLabel("Hémorragie  Méningée", {}) == "hemorragie meningee");
  CHECK(NormalizeLabel("", {}) == "");
  MatchPolicy keep;
  keep.fold_diacritics = false;
  CHECK(NormalizeLabel("Méningée", keep) == "méningée");
}

TEST_CASE("concept verification") {
  const Thesaurus th = Mini();
  const std::vector<TermInput> compounds{
      Term({"hématom", "fronto", "pariétal"}, "hématome fronto pariétale"),
      Term({"hémorragi", "méning"}, "hémorragie méningée"),
      Term({"inond", "ventricul"}, "inondation ventriculaire"),
      Term({"fronto", "pariétal", "droit"}, "fronto pariétale droit")};
  const std::vector<TermInput> simple{Term({"hémorragi"}, "hémorragie"),
                                      Term({"radiographi"}, "radiographie"),
                                      Term({"hématuri"}, "hématurie")};
  const auto kept = ExtractConcepts(simple, compounds, th);
  std::vector<std::string> keywords;
  for (const auto& m : kept) keywords.push_back(m.keyword);
  CHECK(keywords == std::vector<std::string>{"hématome fronto pariétale",
                                             "hémorragie méningée",
                                             "inondation ventriculaire",
                                             "hématurie"});
  CHECK(kept[1].concept_id == "urn:tea:test:hemorragie-meningee");
  CHECK(kept[1].compound);
  CHECK_FALSE(kept[3].compound);

  CHECK(ExtractConcepts(simple, compounds, Thesaurus{}).empty());
}

TEST_CASE("token subset matching") {
  const Thesaurus th = Mini();
  const std::vector<TermInput> compounds{
      Term({"hématom", "pariétal"}, "hématome pariétal")};
  CHECK(ExtractConcepts({}, compounds, th).empty());
  MatchPolicy loose;
  loose.allow_token_subset = true;
  const auto kept = ExtractConcepts({}, compounds, th, loose);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].concept_id == "urn:tea:test:hematome-fronto-parietal");
  // Simple terms still need an exact label.
  CHECK(ExtractConcepts({Term({"cérébral"}, "cérébral")}, {}, th, loose).empty());
}

TEST_CASE("stemmed label matching") {
  const Thesaurus th = Mini();
  const auto fr = LoadRuleset(testing::FrData() / "stemmer.rules");
  const std::vector<TermInput> compounds{
      Term({"hémorragi", "méning"}, "hémorragie méningées")};
  MatchPolicy stem;
  stem.stem_labels = true;
  CHECK(ExtractConcepts({}, compounds, th).empty());
  CHECK(ExtractConcepts({}, compounds, th, stem, &fr).size() == 1);
}

}  // namespace
}  // namespace tea
