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

#include "cli.h"

#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tea/corpus.h"
#include "tea/error.h"
#include "tea/evaluation.h"
#include "tea/indexer.h"
#include "tea/preprocess.h"
#include "tea/text.h"
#include "tea/thesaurus.h"

namespace tea::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct PipelineFlags {
  std::string manifest;
  std::string config;
  PipelineConfig values;
  CLI::Option* tfidf = nullptr;
  CLI::Option* mi = nullptr;
  CLI::Option* base = nullptr;
  CLI::Option* max_len = nullptr;
  CLI::Option* min_len = nullptr;
  CLI::Option* stemmer = nullptr;
  CLI::Option* stopwords = nullptr;
  CLI::Option* repairs = nullptr;
  CLI::Option* thesaurus = nullptr;
  CLI::Option* jobs = nullptr;
  bool keep_case = false;
  bool keep_apostrophes = false;
  bool keep_punctuation = false;
  bool keep_numbers = false;
  bool match_case = false;
  bool match_diacritics = false;
  bool match_stems = false;
  bool match_subset = false;
};

void AddPipelineFlags(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--manifest", f.manifest, "Corpus manifest (JSON)")
      ->required();
  cmd->add_option("--config", f.config,
                  "Pipeline config (JSON); defaults to $TEA_CONFIG");
  f.tfidf = cmd->add_option("--tfidf-threshold", f.values.tfidf_threshold,
                            "Keep simple terms whose average tf.idf is above this")
                ->capture_default_str();
  f.mi = cmd->add_option("--mi-threshold", f.values.mi_threshold,
                         "Keep extensions whose mutual information is above this")
             ->capture_default_str();
  f.base = cmd->add_option("--mi-log-base", f.values.mi_log_base,
                           "Logarithm base of the mutual information")
               ->capture_default_str();
  f.max_len = cmd->add_option("--max-compound-len", f.values.max_compound_len,
                              "Longest compound term, in words")
                  ->capture_default_str();
  f.min_len = cmd->add_option("--min-token-length", f.values.min_token_length,
                              "Drop shorter tokens (code points)")
                  ->capture_default_str();
  f.stemmer = cmd->add_option("--rules", f.values.stemmer_path,
                              "Stemmer rule file (none: no stemming)");
  f.stopwords = cmd->add_option("--stopwords", f.values.stopwords_paths,
                                "Stopword list; repeatable");
  f.repairs = cmd->add_option("--repairs", f.values.repair_path,
                              "Token repair map");
  f.thesaurus = cmd->add_option("--thesaurus", f.values.thesaurus_path,
                                "SKOS/RDF thesaurus");
  f.jobs = cmd->add_option("--jobs", f.values.jobs,
                           "Worker threads (0: all cores)")
               ->capture_default_str();
  cmd->add_flag("--keep-case", f.keep_case, "Do not lowercase tokens");
  cmd->add_flag("--keep-apostrophes", f.keep_apostrophes,
                "Do not split on apostrophes");
  cmd->add_flag("--keep-punctuation", f.keep_punctuation,
                "Keep punctuation tokens");
  cmd->add_flag("--keep-numbers", f.keep_numbers, "Keep numeric tokens");
  cmd->add_flag("--match-case", f.match_case,
                "Thesaurus matching is case sensitive");
  cmd->add_flag("--match-diacritics", f.match_diacritics,
                "Thesaurus matching keeps diacritics");
  cmd->add_flag("--match-stems", f.match_stems,
                "Stem thesaurus labels before matching");
  cmd->add_flag("--match-token-subset", f.match_subset,
                "A keyword may match a label containing all its words");
}

std::string Resolve(const fs::path& base, const std::string& p) {
  if (p.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).lexically_normal().string();
}

// defaults < config file < explicit flags
PipelineConfig BuildConfig(const PipelineFlags& f) {
  PipelineConfig c;
  std::string config_path = f.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv(kConfigEnv); env && *env) config_path = env;
  }
  if (!config_path.empty()) {
    json j;
    try {
      j = json::parse(ReadUtf8File(config_path));
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("{}: {}", config_path, e.what()));
    }
    if (!j.is_object()) throw ConfigError(config_path + ": expected an object");
    try {
      ApplyPipelineConfigJson(j, c);
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("{}: {}", config_path, e.what()));
    }
    const fs::path dir = fs::path(config_path).parent_path();
    c.stemmer_path = Resolve(dir, c.stemmer_path);
    c.repair_path = Resolve(dir, c.repair_path);
    c.thesaurus_path = Resolve(dir, c.thesaurus_path);
    for (auto& p : c.stopwords_paths) p = Resolve(dir, p);
  }
  const auto& v = f.values;
  if (f.tfidf->count()) c.tfidf_threshold = v.tfidf_threshold;
  if (f.mi->count()) c.mi_threshold = v.mi_threshold;
  if (f.base->count()) c.mi_log_base = v.mi_log_base;
  if (f.max_len->count()) c.max_compound_len = v.max_compound_len;
  if (f.min_len->count()) c.min_token_length = v.min_token_length;
  if (f.stemmer->count()) c.stemmer_path = v.stemmer_path;
  if (f.stopwords->count()) c.stopwords_paths = v.stopwords_paths;
  if (f.repairs->count()) c.repair_path = v.repair_path;
  if (f.thesaurus->count()) c.thesaurus_path = v.thesaurus_path;
  if (f.jobs->count()) c.jobs = v.jobs;
  if (f.keep_case) c.fold_case = false;
  if (f.keep_apostrophes) c.split_apostrophes = false;
  if (f.keep_punctuation) c.strip_punctuation = false;
  if (f.keep_numbers) c.drop_numeric_tokens = false;
  if (f.match_case) c.match_policy.fold_case = false;
  if (f.match_diacritics) c.match_policy.fold_diacritics = false;
  if (f.match_stems) c.match_policy.stem_labels = true;
  if (f.match_subset) c.match_policy.allow_token_subset = true;
  return c;
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IngestionError("cannot write " + path);
  out << content;
  if (!out) throw IngestionError("error writing " + path);
}

int CmdIndex(const PipelineFlags& f, const std::string& output,
             std::ostream& out) {
  const Pipeline pipeline = LoadPipeline(BuildConfig(f));
  const Corpus corpus = LoadCorpus(f.manifest);
  const ImageIndex index = IndexComments(corpus, pipeline);
  if (!output.empty()) SaveIndex(index, output);
  out << KeywordReportText(index, &corpus);
  return kExitOk;
}

int CmdTerms(const PipelineFlags& f, const std::string& format,
             std::ostream& out) {
  const Pipeline pipeline = LoadPipeline(BuildConfig(f));
  const Corpus corpus = LoadCorpus(f.manifest);
  const PipelineTrace trace = ScoreTerms(corpus, pipeline);
  if (format == "csv") {
    out << TermReportCsv(trace.simple_terms, trace.stats, trace.surfaces)
        << '\n'
        << CompoundReportCsv(trace.compounds, trace.surfaces);
    return kExitOk;
  }
  json j;
  j["simple_terms"] = json::array();
  for (const auto& t : trace.simple_terms) {
    const auto s = trace.surfaces.find(t.term);
    j["simple_terms"].push_back(
        {{"term", t.term},
         {"surface_form", s == trace.surfaces.end() ? t.term : s->second},
         {"n_i", trace.stats.Df(t.term)},
         {"avg_score", t.avg_score},
         {"selected", t.selected}});
  }
  j["compounds"] = json::array();
  for (const auto& c : trace.compounds) {
    j["compounds"].push_back({{"compound", DisplayPhrase(c.tokens, trace.surfaces)},
                              {"stems", c.tokens},
                              {"mi_score", c.mi_score},
                              {"support", c.support}});
  }
  out << j.dump(2) << '\n';
  return kExitOk;
}

int CmdSearch(const std::string& index_path, const std::string& manifest,
              const std::vector<std::string>& words, int limit,
              const std::string& format, std::ostream& out, std::ostream& err) {
  const ImageIndex index = LoadIndex(index_path);
  if (!manifest.empty()) {
    const Corpus corpus = LoadCorpus(manifest);
    if (CorpusFingerprint(corpus) != index.corpus_fingerprint)
      err << "warning: index was built from a different corpus\n";
  }
  auto hits = Search(index, text::Join(words, " "));
  if (limit > 0 && hits.size() > static_cast<size_t>(limit)) hits.resize(limit);
  if (format == "json") {
    json j = json::array();
    for (const auto& h : hits) {
      j.push_back({{"image_id", h.image_id},
                   {"matched", h.matched},
                   {"keyword_score", h.keyword_score},
                   {"keywords", h.keywords}});
    }
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  int rank = 0;
  for (const auto& h : hits) {
    out << fmt::format("{}\t{}\t{}\t{:.4f}\t{}\n", ++rank, h.image_id,
                       h.matched, h.keyword_score, text::Join(h.keywords, "; "));
  }
  if (hits.empty()) err << "no matching image\n";
  return kExitOk;
}

int CmdEval(const std::string& run_path, const std::string& qrels_path,
            const std::string& curve_path, std::ostream& out,
            std::ostream& err) {
  const RunResult run = LoadRun(run_path);
  const Qrels qrels = LoadQrels(qrels_path);
  const MapResult result = MeanAveragePrecision(run, qrels);
  for (const auto& [query, ap] : result.per_query)
    out << fmt::format("AP {} {:.4f}\n", query, ap);
  for (const auto& q : result.missing_queries)
    err << "warning: query '" << q << "' missing from run, scored 0\n";
  out << fmt::format("MAP {:.4f}\n", result.map);
  if (!curve_path.empty()) WriteFile(curve_path, PrCurveCsv(run, qrels));
  return kExitOk;
}

int CmdStem(const std::string& rules, const std::vector<std::string>& words,
            std::ostream& out) {
  const StemmerRuleset ruleset = LoadRuleset(rules);
  for (const auto& w : words) out << Stem(NormalizeWord(w), ruleset) << '\n';
  return kExitOk;
}

int CmdThesaurusCheck(const std::string& path, bool dump_index,
                      std::ostream& out, std::ostream& err) {
  const Thesaurus th = ParseThesaurus(path);
  size_t pref = 0, alt = 0, hidden = 0;
  for (const auto& [id, c] : th.concepts) {
    pref += c.pref_labels.size();
    alt += c.alt_labels.size();
    hidden += c.hidden_labels.size();
  }
  for (const auto& w : th.warnings) err << "warning: " << w << '\n';
  out << fmt::format("{} concepts\n", th.concepts.size());
  out << fmt::format("{} labels ({} preferred, {} alternative, {} hidden)\n",
                     pref + alt + hidden, pref, alt, hidden);
  out << fmt::format("{} distinct normalized labels\n", th.label_index.size());
  if (th.skipped) out << fmt::format("{} records skipped\n", th.skipped);
  if (dump_index) out << FormatLabelIndex(th.label_index);
  return kExitOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Index medical images from free-text annotations",
               "tea_indexer"};
  app.require_subcommand(1);

  auto* index_cmd = app.add_subcommand("index", "Build the keyword index");
  PipelineFlags index_flags;
  std::string index_output;
  AddPipelineFlags(index_cmd, index_flags);
  index_cmd->add_option("-o,--output", index_output, "Write the index here");

  auto* terms_cmd =
      app.add_subcommand("terms", "Report scored simple and compound terms");
  PipelineFlags terms_flags;
  std::string terms_format = "csv";
  AddPipelineFlags(terms_cmd, terms_flags);
  terms_cmd->add_option("--format", terms_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  auto* search_cmd = app.add_subcommand("search", "Query a saved index");
  std::string search_index, search_manifest, search_format = "text";
  std::vector<std::string> query_words;
  int limit = 0;
  search_cmd->add_option("--index", search_index, "Index file")->required();
  search_cmd->add_option("--manifest", search_manifest,
                         "Warn when the index was built from another corpus");
  search_cmd->add_option("--limit", limit, "Show at most this many images");
  search_cmd->add_option("--format", search_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  search_cmd->add_option("query", query_words, "Query words")->required();

  auto* eval_cmd = app.add_subcommand("eval", "MAP and precision/recall");
  std::string run_path, qrels_path, curve_path;
  eval_cmd->add_option("--run", run_path, "Run file")->required();
  eval_cmd->add_option("--qrels", qrels_path, "Relevance judgments")
      ->required();
  eval_cmd->add_option("--curve", curve_path,
                       "Write the interpolated curve CSV here");

  auto* stem_cmd = app.add_subcommand("stem", "Stem words");
  std::string stem_rules;
  std::vector<std::string> stem_words;
  stem_cmd->add_option("--rules", stem_rules, "Stemmer rule file")->required();
  stem_cmd->add_option("words", stem_words, "Words to stem")->required();

  auto* th_cmd =
      app.add_subcommand("thesaurus-check", "Parse a thesaurus and summarize");
  std::string th_path;
  bool dump_index = false;
  th_cmd->add_option("path", th_path, "SKOS/RDF file")->required();
  th_cmd->add_flag("--dump-index", dump_index,
                   "Print the normalized label index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*index_cmd) return CmdIndex(index_flags, index_output, out);
    if (*terms_cmd) return CmdTerms(terms_flags, terms_format, out);
    if (*search_cmd)
      return CmdSearch(search_index, search_manifest, query_words, limit,
                       search_format, out, err);
    if (*eval_cmd) return CmdEval(run_path, qrels_path, curve_path, out, err);
    if (*stem_cmd) return CmdStem(stem_rules, stem_words, out);
    if (*th_cmd) return CmdThesaurusCheck(th_path, dump_index, out, err);
  } catch (const UserError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RuntimeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tea::cli
