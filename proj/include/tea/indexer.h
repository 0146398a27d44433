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

// End-to-end comment indexing:
//
//   for each annotation: clean, stem
//   statistics over all annotations of the corpus
//   for each image, over its own annotations:
//     simple terms   (average tf.idf > tfidf_threshold)
//     compound terms (MI extension > mi_threshold)
//     concepts       (thesaurus verification)
//
// The resulting ImageIndex maps images to keywords and keywords back to
// images, and is persisted as checksummed JSON.

#ifndef TEA_INDEXER_H_
#define TEA_INDEXER_H_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tea/collocation.h"
#include "tea/corpus.h"
#include "tea/preprocess.h"
#include "tea/thesaurus.h"
#include "tea/weighting.h"

namespace tea {

inline constexpr int kIndexFormatVersion = 1;

struct PipelineConfig {
  double tfidf_threshold = kDefaultTfidfThreshold;
  double mi_threshold = kDefaultMiThreshold;
  double mi_log_base = kDefaultMiLogBase;
  int max_compound_len = kDefaultMaxCompoundLen;

  // Cleaning switches; stopwords and repairs come from the files below.
  bool fold_case = true;
  bool split_apostrophes = true;
  bool strip_punctuation = true;
  bool drop_numeric_tokens = true;
  int min_token_length = 2;

  std::string stemmer_path;
  std::vector<std::string> stopwords_paths;
  std::string repair_path;
  std::string thesaurus_path;
  MatchPolicy match_policy;

  // Worker threads (0: all cores); never changes results and is not
  // persisted.
  int jobs = 0;
};

// Throws ConfigError when thresholds are negative, max_compound_len < 2 or
// the log base is unusable.
void ValidatePipelineConfig(const PipelineConfig& config);

nlohmann::json PipelineConfigToJson(const PipelineConfig& config);
// Overlays the keys present in `j` onto `config`. Unknown keys are rejected.
void ApplyPipelineConfigJson(const nlohmann::json& j, PipelineConfig& config);

// Everything a pipeline run needs, with the files loaded.
struct Pipeline {
  PipelineConfig config;
  CleaningConfig cleaning;
  StemmerRuleset ruleset;
  Thesaurus thesaurus;
};

// Loads and validates the referenced files. A missing thesaurus path is a
// ConfigError; an empty stemmer path means "no stemming".
Pipeline LoadPipeline(const PipelineConfig& config);

struct IndexedKeyword {
  std::string keyword;  // surface display form
  TokenSeq stems;
  double score = 0.0;   // avg tf.idf (simple) or mi_score (compound)
  std::string concept_id;
  bool compound = false;

  friend bool operator==(const IndexedKeyword&, const IndexedKeyword&) = default;
};

// The configuration an index was built with. Carries the full cleaning
// configuration and stemmer rules so queries are processed exactly like the
// indexed text without re-reading any file.
struct ConfigSnapshot {
  double tfidf_threshold = kDefaultTfidfThreshold;
  double mi_threshold = kDefaultMiThreshold;
  double mi_log_base = kDefaultMiLogBase;
  int max_compound_len = kDefaultMaxCompoundLen;
  CleaningConfig cleaning;
  StemmerRuleset ruleset;
  MatchPolicy match_policy;
  std::string thesaurus_path;

  friend bool operator==(const ConfigSnapshot&, const ConfigSnapshot&) = default;
};

struct ImageIndex {
  // Compounds first, then simple terms.
  std::map<std::string, std::vector<IndexedKeyword>> per_image;
  std::map<std::string, std::set<std::string>> inverted;
  std::string corpus_fingerprint;
  ConfigSnapshot config;

  friend bool operator==(const ImageIndex&, const ImageIndex&) = default;
};

// Intermediate results of one run, exposed for reporting (`terms`).
struct PipelineTrace {
  std::vector<Document> documents;
  CorpusStats stats;
  std::map<std::string, std::string> surfaces;
  std::vector<TermCandidate> simple_terms;  // corpus-wide
  std::vector<CompoundTerm> compounds;      // corpus-wide
};

// Throws PipelineError for an empty corpus or one without content tokens.
ImageIndex IndexComments(const Corpus& corpus, const Pipeline& pipeline,
                         PipelineTrace* trace = nullptr);

// Corpus-wide simple and compound terms without thesaurus filtering.
PipelineTrace ScoreTerms(const Corpus& corpus, const Pipeline& pipeline);

// inverted := transpose of per_image.
std::map<std::string, std::set<std::string>> BuildInverted(
    const std::map<std::string, std::vector<IndexedKeyword>>& per_image);

// Serialized form; Save writes exactly SerializeIndex(index).
std::string SerializeIndex(const ImageIndex& index);
ImageIndex DeserializeIndex(const std::string& content);
void SaveIndex(const ImageIndex& index, const std::filesystem::path& path);
// Throws VersionError on a format mismatch and IntegrityError when the
// checksum does not match or the file is truncated.
ImageIndex LoadIndex(const std::filesystem::path& path);

struct SearchHit {
  std::string image_id;
  int matched = 0;           // number of matched keywords (the score)
  double keyword_score = 0;  // summed scores of matched keywords
  std::vector<std::string> keywords;

  friend bool operator==(const SearchHit&, const SearchHit&) = default;
};

// A keyword matches when its stem sequence occurs contiguously in the
// query, or the whole query occurs contiguously in the keyword. Images are
// ranked by matched count, then summed keyword score, then image id.
std::vector<SearchHit> Search(const ImageIndex& index, const std::string& query);

// "Index Keywords :" block per image.
std::string KeywordReportText(const ImageIndex& index, const Corpus* corpus);

}  // namespace tea

#endif  // TEA_INDEXER_H_
