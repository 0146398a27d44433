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

// SKOS thesaurus in RDF/XML (MeSH export dialect) and concept verification
// of extracted terms.
//
// Recognized records are skos:Concept elements and rdf:Description elements
// that carry a skos:prefLabel, either as a child element or as a property
// attribute. Labels keep their xml:lang tag (inherited from ancestors when
// not set locally). skos:broader / skos:related are ignored.

#ifndef TEA_THESAURUS_H_
#define TEA_THESAURUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tea/collocation.h"
#include "tea/preprocess.h"

namespace tea {

struct Label {
  std::string text;
  std::string lang;  // empty when untagged

  friend bool operator==(const Label&, const Label&) = default;
};

struct Concept {
  std::string concept_id;
  std::vector<Label> pref_labels;
  std::vector<Label> alt_labels;
  std::vector<Label> hidden_labels;
  std::optional<std::string> scope_note;

  friend bool operator==(const Concept&, const Concept&) = default;
};

using LabelIndex = std::map<std::string, std::set<std::string>>;

struct Thesaurus {
  std::map<std::string, Concept> concepts;
  // NormalizeLabel(label, default policy) -> concept ids
  LabelIndex label_index;
  // Records skipped because they had no prefLabel.
  size_t skipped = 0;
  std::vector<std::string> warnings;

  size_t LabelCount() const;
};

struct MatchPolicy {
  bool fold_case = true;
  bool fold_diacritics = true;
  bool stem_labels = false;
  bool allow_token_subset = false;

  friend bool operator==(const MatchPolicy&, const MatchPolicy&) = default;
};

// Throws ParseError (with the line number) on malformed XML.
Thesaurus ParseThesaurusXml(std::string_view xml);
Thesaurus ParseThesaurus(const std::filesystem::path& path);

// Builds the label index from the concepts with the default policy.
LabelIndex BuildLabelIndex(const std::map<std::string, Concept>& concepts);

// Case and diacritics folding per policy; whitespace collapsed and trimmed.
std::string NormalizeLabel(std::string_view label, const MatchPolicy& policy);

// Tab-separated "label<TAB>concept_id" lines, sorted.
std::string FormatLabelIndex(const LabelIndex& index);
LabelIndex ParseLabelIndex(std::string_view content);

// An extracted term offered to concept verification.
struct TermInput {
  TokenSeq stems;
  std::string display;  // surface phrase used for matching
  double score = 0.0;
};

struct ConceptMatch {
  std::string keyword;  // display form
  TokenSeq stems;
  std::string concept_id;
  double score = 0.0;
  bool compound = false;

  friend bool operator==(const ConceptMatch&, const ConceptMatch&) = default;
};

// Keeps the terms whose display form matches a thesaurus label under
// `policy`. Compounds come first (in input order) and simple terms that are
// a token of a kept compound are dropped. When several concepts match, the
// lexicographically smallest id is the witness. `ruleset` is required only
// when policy.stem_labels is set.
std::vector<ConceptMatch> ExtractConcepts(
    const std::vector<TermInput>& simple_terms,
    const std::vector<TermInput>& compound_terms, const Thesaurus& thesaurus,
    const MatchPolicy& policy = {}, const StemmerRuleset* ruleset = nullptr);

// JSON list of {"keyword", "concept_id"}.
std::string KeywordReportJson(const std::vector<ConceptMatch>& matches);

}  // namespace tea

#endif  // TEA_THESAURUS_H_
