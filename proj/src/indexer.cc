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

#include "tea/indexer.h"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>

#include "tea/digest.h"
#include "tea/error.h"
#include "tea/text.h"

namespace tea {

using json = nlohmann::json;

void ValidatePipelineConfig(const PipelineConfig& c) {
  if (!(c.tfidf_threshold >= 0.0))
    throw ConfigError("tfidf_threshold must be >= 0");
  if (!(c.mi_threshold >= 0.0)) throw ConfigError("mi_threshold must be >= 0");
  if (!(c.mi_log_base > 0.0) || c.mi_log_base == 1.0)
    throw ConfigError("mi_log_base must be > 0 and != 1");
  if (c.max_compound_len < 2)
    throw ConfigError("max_compound_len must be >= 2");
  if (c.min_token_length < 1)
    throw ConfigError("min_token_length must be >= 1");
  if (c.jobs < 0) throw ConfigError("jobs must be >= 0");
}

namespace {

json PolicyToJson(const MatchPolicy& p) {
  return {{"fold_case", p.fold_case},
          {"fold_diacritics", p.fold_diacritics},
          {"stem_labels", p.stem_labels},
          {"allow_token_subset", p.allow_token_subset}};
}

template <typename T>
void Take(const json& j, const char* key, T& dst) {
  if (const auto it = j.find(key); it != j.end()) {
    try {
      dst = it->get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config key '") + key +
                        "' has the wrong type");
    }
  }
}

void CheckKeys(const json& j, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }))
      throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

MatchPolicy PolicyFromJson(const json& j) {
  CheckKeys(j, {"fold_case", "fold_diacritics", "stem_labels",
                "allow_token_subset"},
            "match_policy");
  MatchPolicy p;
  Take(j, "fold_case", p.fold_case);
  Take(j, "fold_diacritics", p.fold_diacritics);
  Take(j, "stem_labels", p.stem_labels);
  Take(j, "allow_token_subset", p.allow_token_subset);
  return p;
}

}  // namespace

json PipelineConfigToJson(const PipelineConfig& c) {
  return {{"tfidf_threshold", c.tfidf_threshold},
          {"mi_threshold", c.mi_threshold},
          {"mi_log_base", c.mi_log_base},
          {"max_compound_len", c.max_compound_len},
          {"fold_case", c.fold_case},
          {"split_apostrophes", c.split_apostrophes},
          {"strip_punctuation", c.strip_punctuation},
          {"drop_numeric_tokens", c.drop_numeric_tokens},
          {"min_token_length", c.min_token_length},
          {"stemmer_path", c.stemmer_path},
          {"stopwords_paths", c.stopwords_paths},
          {"repair_path", c.repair_path},
          {"thesaurus_path", c.thesaurus_path},
          {"match_policy", PolicyToJson(c.match_policy)},
          {"jobs", c.jobs}};
}

void ApplyPipelineConfigJson(const json& j, PipelineConfig& c) {
  CheckKeys(j,
            {"tfidf_threshold", "mi_threshold", "mi_log_base",
             "max_compound_len", "fold_case", "split_apostrophes",
             "strip_punctuation", "drop_numeric_tokens", "min_token_length",
             "stemmer_path", "stopwords_paths", "repair_path",
             "thesaurus_path", "match_policy", "jobs"},
            "pipeline config");
  Take(j, "tfidf_threshold", c.tfidf_threshold);
  Take(j, "mi_threshold", c.mi_threshold);
  Take(j, "mi_log_base", c.mi_log_base);
  Take(j, "max_compound_len", c.max_compound_len);
  Take(j, "fold_case", c.fold_case);
  Take(j, "split_apostrophes", c.split_apostrophes);
  Take(j, "strip_punctuation", c.strip_punctuation);
  Take(j, "drop_numeric_tokens", c.drop_numeric_tokens);
  Take(j, "min_token_length", c.min_token_length);
  Take(j, "stemmer_path", c.stemmer_path);
  if (const auto it = j.find("stopwords_paths"); it != j.end()) {
    if (it->is_string()) c.stopwords_paths = {it->get<std::string>()};
    else Take(j, "stopwords_paths", c.stopwords_paths);
  }
  Take(j, "repair_path", c.repair_path);
  Take(j, "thesaurus_path", c.thesaurus_path);
  if (const auto it = j.find("match_policy"); it != j.end())
    c.match_policy = PolicyFromJson(*it);
  Take(j, "jobs", c.jobs);
}

Pipeline LoadPipeline(const PipelineConfig& config) {
  ValidatePipelineConfig(config);
  if (config.thesaurus_path.empty())
    throw ConfigError("no thesaurus given (use --thesaurus)");

  Pipeline p;
  p.config = config;
  p.cleaning.fold_case = config.fold_case;
  p.cleaning.split_apostrophes = config.split_apostrophes;
  p.cleaning.strip_punctuation = config.strip_punctuation;
  p.cleaning.drop_numeric_tokens = config.drop_numeric_tokens;
  p.cleaning.min_token_length = config.min_token_length;
  for (const auto& path : config.stopwords_paths) {
    const auto words = LoadStopwords(path);
    p.cleaning.stopwords.insert(words.begin(), words.end());
  }
  if (!config.repair_path.empty())
    p.cleaning.repairs = LoadRepairMap(config.repair_path);
  ValidateCleaningConfig(p.cleaning);
  if (!config.stemmer_path.empty()) p.ruleset = LoadRuleset(config.stemmer_path);
  try {
    p.thesaurus = ParseThesaurus(config.thesaurus_path);
  } catch (const IngestionError& e) {
    throw ConfigError(std::string("thesaurus: ") + e.what());
  }
  return p;
}

namespace {

struct CorpusRun {
  std::vector<Document> documents;
  CorpusStats stats;
  SequenceCounts counts;
  std::map<std::string, std::string> surfaces;
};

CorpusRun RunCorpusStages(const Corpus& corpus, const Pipeline& p) {
  if (corpus.empty()) throw PipelineError("corpus has no annotations");
  CorpusRun run;
  run.documents =
      PreprocessCorpus(corpus, p.cleaning, p.ruleset, p.config.jobs);
  try {
    run.stats = ComputeStats(run.documents, p.config.jobs);
  } catch (const StatsError&) {
    throw PipelineError("no content tokens left after cleaning");
  }
  run.counts =
      CountSequences(run.documents, p.config.max_compound_len, p.config.jobs);
  run.surfaces = SurfaceForms(run.documents);
  return run;
}

CompoundOptions OptionsOf(const PipelineConfig& c) {
  return {c.mi_threshold, c.mi_log_base, c.max_compound_len};
}

std::set<std::string> SelectedSet(const std::vector<TermCandidate>& terms) {
  std::set<std::string> out;
  for (const auto& t : terms) {
    if (t.selected) out.insert(t.term);
  }
  return out;
}

ConfigSnapshot SnapshotOf(const Pipeline& p) {
  ConfigSnapshot s;
  s.tfidf_threshold = p.config.tfidf_threshold;
  s.mi_threshold = p.config.mi_threshold;
  s.mi_log_base = p.config.mi_log_base;
  s.max_compound_len = p.config.max_compound_len;
  s.cleaning = p.cleaning;
  s.ruleset = p.ruleset;
  s.match_policy = p.config.match_policy;
  s.thesaurus_path = p.config.thesaurus_path;
  return s;
}

}  // namespace

PipelineTrace ScoreTerms(const Corpus& corpus, const Pipeline& p) {
  CorpusRun run = RunCorpusStages(corpus, p);
  PipelineTrace trace;
  trace.simple_terms =
      SelectSimpleTerms(run.documents, run.stats, p.config.tfidf_threshold);
  trace.compounds = ExtractCompoundTerms(SelectedSet(trace.simple_terms),
                                         run.counts, OptionsOf(p.config));
  trace.documents = std::move(run.documents);
  trace.stats = std::move(run.stats);
  trace.surfaces = std::move(run.surfaces);
  return trace;
}

std::map<std::string, std::set<std::string>> BuildInverted(
    const std::map<std::string, std::vector<IndexedKeyword>>& per_image) {
  std::map<std::string, std::set<std::string>> inverted;
  for (const auto& [image, keywords] : per_image) {
    for (const auto& k : keywords) inverted[k.keyword].insert(image);
  }
  return inverted;
}

ImageIndex IndexComments(const Corpus& corpus, const Pipeline& p,
                         PipelineTrace* trace) {
  CorpusRun run = RunCorpusStages(corpus, p);
  const CompoundOptions options = OptionsOf(p.config);

  ImageIndex index;
  for (const auto& [image_id, info] : corpus.images()) {
    auto& keywords = index.per_image[image_id];
    const std::vector<size_t> docs = corpus.AnnotationsOf(image_id);
    if (docs.empty()) continue;

    const auto simple =
        SelectSimpleTerms(run.stats, docs, p.config.tfidf_threshold);
    std::vector<Document> image_docs;
    image_docs.reserve(docs.size());
    for (const size_t j : docs) image_docs.push_back(run.documents[j]);
    const SequenceCounts scope =
        CountSequences(image_docs, p.config.max_compound_len);
    const auto compounds =
        ExtractCompoundTerms(SelectedSet(simple), run.counts, options, &scope);

    std::vector<TermInput> simple_inputs;
    for (const auto& t : simple) {
      if (!t.selected) continue;
      simple_inputs.push_back(
          {{t.term}, DisplayPhrase({t.term}, run.surfaces), t.avg_score});
    }
    std::vector<TermInput> compound_inputs;
    for (const auto& c : compounds) {
      compound_inputs.push_back(
          {c.tokens, DisplayPhrase(c.tokens, run.surfaces), c.mi_score});
    }
    for (auto& m : ExtractConcepts(simple_inputs, compound_inputs, p.thesaurus,
                                   p.config.match_policy, &p.ruleset)) {
      keywords.push_back({std::move(m.keyword), std::move(m.stems), m.score,
                          std::move(m.concept_id), m.compound});
    }
  }
  index.inverted = BuildInverted(index.per_image);
  index.corpus_fingerprint = CorpusFingerprint(corpus);
  index.config = SnapshotOf(p);

  if (trace != nullptr) {
    trace->simple_terms = SelectSimpleTerms(run.documents, run.stats,
                                            p.config.tfidf_threshold);
    trace->compounds = ExtractCompoundTerms(
        SelectedSet(trace->simple_terms), run.counts, options);
    trace->documents = std::move(run.documents);
    trace->stats = std::move(run.stats);
    trace->surfaces = std::move(run.surfaces);
  }
  return index;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

json SnapshotToJson(const ConfigSnapshot& s) {
  json stopwords = json::array();
  for (const auto& w : s.cleaning.stopwords) stopwords.push_back(w);
  return {
      {"tfidf_threshold", s.tfidf_threshold},
      {"mi_threshold", s.mi_threshold},
      {"mi_log_base", s.mi_log_base},
      {"max_compound_len", s.max_compound_len},
      {"cleaning",
       {{"fold_case", s.cleaning.fold_case},
        {"split_apostrophes", s.cleaning.split_apostrophes},
        {"strip_punctuation", s.cleaning.strip_punctuation},
        {"drop_numeric_tokens", s.cleaning.drop_numeric_tokens},
        {"min_token_length", s.cleaning.min_token_length},
        {"stopwords", stopwords},
        {"repairs", FormatRepairMap(s.cleaning.repairs)}}},
      {"stemmer", FormatRuleset(s.ruleset)},
      {"match_policy", PolicyToJson(s.match_policy)},
      {"thesaurus_path", s.thesaurus_path}};
}

ConfigSnapshot SnapshotFromJson(const json& j) {
  ConfigSnapshot s;
  s.tfidf_threshold = j.at("tfidf_threshold").get<double>();
  s.mi_threshold = j.at("mi_threshold").get<double>();
  s.mi_log_base = j.at("mi_log_base").get<double>();
  s.max_compound_len = j.at("max_compound_len").get<int>();
  const json& c = j.at("cleaning");
  s.cleaning.fold_case = c.at("fold_case").get<bool>();
  s.cleaning.split_apostrophes = c.at("split_apostrophes").get<bool>();
  s.cleaning.strip_punctuation = c.at("strip_punctuation").get<bool>();
  s.cleaning.drop_numeric_tokens = c.at("drop_numeric_tokens").get<bool>();
  s.cleaning.min_token_length = c.at("min_token_length").get<int>();
  for (const auto& w : c.at("stopwords")) s.cleaning.stopwords.insert(w.get<std::string>());
  s.cleaning.repairs = ParseRepairMap(c.at("repairs").get<std::string>());
  s.ruleset = ParseRuleset(j.at("stemmer").get<std::string>());
  s.match_policy = PolicyFromJson(j.at("match_policy"));
  s.thesaurus_path = j.at("thesaurus_path").get<std::string>();
  return s;
}

json IndexBody(const ImageIndex& index) {
  json per_image = json::object();
  for (const auto& [image, keywords] : index.per_image) {
    json list = json::array();
    for (const auto& k : keywords) {
      list.push_back({{"keyword", k.keyword},
                      {"stems", k.stems},
                      {"score", k.score},
                      {"concept_id", k.concept_id},
                      {"compound", k.compound}});
    }
    per_image[image] = std::move(list);
  }
  json inverted = json::object();
  for (const auto& [keyword, images] : index.inverted)
    inverted[keyword] = json(images);
  return {{"format_version", kIndexFormatVersion},
          {"corpus_fingerprint", index.corpus_fingerprint},
          {"config", SnapshotToJson(index.config)},
          {"per_image", std::move(per_image)},
          {"inverted", std::move(inverted)}};
}

// json objects are key-sorted, so the compact dump is canonical.
std::string Checksum(const json& body) { return Sha256Hex(body.dump()); }

}  // namespace

std::string SerializeIndex(const ImageIndex& index) {
  json doc = IndexBody(index);
  doc["checksum"] = Checksum(doc);
  return doc.dump(2) + "\n";
}

ImageIndex DeserializeIndex(const std::string& content) {
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw IntegrityError(std::string("index file is truncated or corrupt: ") +
                         e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version"))
    throw IntegrityError("index file has no format_version");
  const json& version = doc["format_version"];
  if (!version.is_number_integer() || version.get<int>() != kIndexFormatVersion)
    throw VersionError(fmt::format(
        "index format version {} is not supported (expected {}); rebuild the "
        "index with the 'index' command",
        version.dump(), kIndexFormatVersion));
  if (!doc.contains("checksum") || !doc["checksum"].is_string())
    throw IntegrityError("index file has no checksum");
  const std::string stored = doc["checksum"].get<std::string>();
  doc.erase("checksum");
  if (Checksum(doc) != stored)
    throw IntegrityError("index checksum mismatch; file is corrupt");

  ImageIndex index;
  try {
    index.corpus_fingerprint = doc.at("corpus_fingerprint").get<std::string>();
    index.config = SnapshotFromJson(doc.at("config"));
    for (const auto& [image, list] : doc.at("per_image").items()) {
      auto& keywords = index.per_image[image];
      for (const auto& k : list) {
        keywords.push_back({k.at("keyword").get<std::string>(),
                            k.at("stems").get<TokenSeq>(),
                            k.at("score").get<double>(),
                            k.at("concept_id").get<std::string>(),
                            k.at("compound").get<bool>()});
      }
    }
    for (const auto& [keyword, images] : doc.at("inverted").items())
      index.inverted[keyword] = images.get<std::set<std::string>>();
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("index file is malformed: ") + e.what());
  }
  if (index.inverted != BuildInverted(index.per_image))
    throw IntegrityError("inverted index is not the transpose of per_image");
  return index;
}

void SaveIndex(const ImageIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestionError("cannot write index file: " + path.string());
  out << SerializeIndex(index);
  if (!out) throw IngestionError("error writing index file: " + path.string());
}

ImageIndex LoadIndex(const std::filesystem::path& path) {
  return DeserializeIndex(ReadUtf8File(path));
}

// ---------------------------------------------------------------------------
// Search

namespace {

bool ContainsRun(const TokenSeq& haystack, const TokenSeq& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(),
                     needle.end()) != haystack.end();
}

}  // namespace

std::vector<SearchHit> Search(const ImageIndex& index,
                              const std::string& query) {
  TokenSeq q;
  for (const auto& w : Clean(query, index.config.cleaning)) {
    std::string stem = Stem(w, index.config.ruleset);
    if (!index.config.cleaning.stopwords.contains(stem)) q.push_back(stem);
  }
  std::vector<SearchHit> hits;
  if (q.empty()) return hits;

  for (const auto& [image, keywords] : index.per_image) {
    SearchHit hit{image, 0, 0.0, {}};
    for (const auto& k : keywords) {
      if (ContainsRun(q, k.stems) || ContainsRun(k.stems, q)) {
        ++hit.matched;
        hit.keyword_score += k.score;
        hit.keywords.push_back(k.keyword);
      }
    }
    if (hit.matched > 0) hits.push_back(std::move(hit));
  }
  std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
    if (a.matched != b.matched) return a.matched > b.matched;
    if (a.keyword_score != b.keyword_score)
      return a.keyword_score > b.keyword_score;
    return a.image_id < b.image_id;
  });
  return hits;
}

std::string KeywordReportText(const ImageIndex& index, const Corpus* corpus) {
  std::string out;
  for (const auto& [image, keywords] : index.per_image) {
    std::string title = image;
    if (corpus != nullptr) {
      const auto it = corpus->images().find(image);
      if (it != corpus->images().end() && it->second.name != image)
        title += " (" + it->second.name + ")";
    }
    out += "Image " + title + "\n";
    constexpr std::string_view kLead = "Index Keywords : ";
    if (keywords.empty()) {
      out += std::string(kLead) + "(none)\n";
      continue;
    }
    for (size_t i = 0; i < keywords.size(); ++i) {
      out += i == 0 ? std::string(kLead) : std::string(kLead.size(), ' ');
      out += keywords[i].keyword + "\n";
    }
  }
  return out;
}

}  // namespace tea
