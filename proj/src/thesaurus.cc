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

#include "tea/thesaurus.h"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>

#include "json.hpp"
#include "tea/corpus.h"
#include "tea/error.h"
#include "tea/text.h"

namespace tea {
namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kRdfNs = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr std::string_view kSkosNs = "http://www.w3.org/2004/02/skos/core#";
constexpr std::string_view kXmlNs = "http://www.w3.org/XML/1998/namespace";
constexpr std::string_view kAttrNode = "<xmlattr>";

struct QName {
  std::string ns;
  std::string local;

  bool Is(std::string_view n, std::string_view l) const {
    return ns == n && local == l;
  }
};

// Prefix -> namespace bindings in scope, innermost last.
class NsScope {
 public:
  NsScope() { bindings_["xml"] = std::string(kXmlNs); }

  NsScope Enter(const pt::ptree& element) const {
    NsScope inner = *this;
    if (const auto attrs = element.get_child_optional("<xmlattr>")) {
      for (const auto& [name, value] : *attrs) {
        if (name == "xmlns")
          inner.bindings_[""] = value.data();
        else if (name.starts_with("xmlns:"))
          inner.bindings_[name.substr(6)] = value.data();
      }
    }
    return inner;
  }

  // Unknown prefixes resolve to an empty namespace; such names simply never
  // match the RDF/SKOS vocabulary.
  QName Resolve(const std::string& name, bool is_attribute) const {
    const auto colon = name.find(':');
    std::string prefix;
    std::string local = name;
    if (colon != std::string::npos) {
      prefix = name.substr(0, colon);
      local = name.substr(colon + 1);
    } else if (is_attribute) {
      return {"", name};
    }
    const auto it = bindings_.find(prefix);
    return {it == bindings_.end() ? std::string() : it->second, local};
  }

 private:
  std::map<std::string, std::string> bindings_;
};

std::string CleanText(const std::string& s) { return text::CollapseWhitespace(s); }

struct RecordBuilder {
  Thesaurus& out;
  size_t anonymous = 0;

  void AddLabel(Concept& c, const QName& prop, const std::string& value,
                const std::string& lang) {
    Label label{CleanText(value), lang};
    if (label.text.empty()) return;
    if (prop.Is(kSkosNs, "prefLabel")) c.pref_labels.push_back(label);
    else if (prop.Is(kSkosNs, "altLabel")) c.alt_labels.push_back(label);
    else if (prop.Is(kSkosNs, "hiddenLabel")) c.hidden_labels.push_back(label);
    else if (prop.Is(kSkosNs, "scopeNote") && !c.scope_note)
      c.scope_note = label.text;
  }

  std::string LangOf(const pt::ptree& node, const NsScope& scope,
                     const std::string& inherited) {
    if (const auto attrs = node.get_child_optional("<xmlattr>")) {
      for (const auto& [name, value] : *attrs) {
        if (scope.Resolve(name, true).Is(kXmlNs, "lang")) return value.data();
      }
    }
    return inherited;
  }

  void Visit(const std::string& name, const pt::ptree& node,
             const NsScope& outer, const std::string& inherited_lang) {
    if (name == kAttrNode || name == "<xmlcomment>" || name == "<xmltext>")
      return;
    const NsScope scope = outer.Enter(node);
    const std::string lang = LangOf(node, scope, inherited_lang);
    const QName qname = scope.Resolve(name, false);

    const bool is_concept = qname.Is(kSkosNs, "Concept");
    const bool is_description = qname.Is(kRdfNs, "Description");
    if (is_concept || is_description) {
      Concept c;
      std::optional<std::string> id;
      if (const auto attrs = node.get_child_optional("<xmlattr>")) {
        for (const auto& [attr, value] : *attrs) {
          const QName an = scope.Resolve(attr, true);
          if (an.Is(kRdfNs, "about")) id = value.data();
          else if (an.Is(kRdfNs, "ID") && !id) id = "#" + value.data();
          else if (an.Is(kRdfNs, "nodeID") && !id) id = "_:" + value.data();
          else AddLabel(c, an, value.data(), lang);
        }
      }
      for (const auto& [child_name, child] : node) {
        if (child_name == kAttrNode || child_name == "<xmlcomment>") continue;
        const NsScope child_scope = scope.Enter(child);
        const QName prop = child_scope.Resolve(child_name, false);
        AddLabel(c, prop, child.data(), LangOf(child, child_scope, lang));
      }
      if (is_description && c.pref_labels.empty()) {
        // Not a concept record; look for nested ones.
        for (const auto& [child_name, child] : node)
          Visit(child_name, child, scope, lang);
        return;
      }
      c.concept_id = id ? *id : "_:concept" + std::to_string(++anonymous);
      Merge(std::move(c));
      return;
    }
    for (const auto& [child_name, child] : node)
      Visit(child_name, child, scope, lang);
  }

  void Merge(Concept c) {
    auto [it, inserted] = out.concepts.try_emplace(c.concept_id, c);
    if (inserted) return;
    Concept& existing = it->second;
    auto append = [](std::vector<Label>& dst, const std::vector<Label>& src) {
      dst.insert(dst.end(), src.begin(), src.end());
    };
    append(existing.pref_labels, c.pref_labels);
    append(existing.alt_labels, c.alt_labels);
    append(existing.hidden_labels, c.hidden_labels);
    if (!existing.scope_note) existing.scope_note = c.scope_note;
  }
};

}  // namespace

size_t Thesaurus::LabelCount() const {
  size_t n = 0;
  for (const auto& [id, c] : concepts)
    n += c.pref_labels.size() + c.alt_labels.size() + c.hidden_labels.size();
  return n;
}

std::string NormalizeLabel(std::string_view label, const MatchPolicy& policy) {
  std::string out = text::ToNfc(label);
  if (policy.fold_case) out = text::ToLower(out);
  if (policy.fold_diacritics) out = text::StripDiacritics(out);
  return text::CollapseWhitespace(out);
}

LabelIndex BuildLabelIndex(const std::map<std::string, Concept>& concepts) {
  LabelIndex index;
  const MatchPolicy policy;
  for (const auto& [id, c] : concepts) {
    for (const auto* labels : {&c.pref_labels, &c.alt_labels, &c.hidden_labels}) {
      for (const auto& l : *labels) index[NormalizeLabel(l.text, policy)].insert(id);
    }
  }
  return index;
}

Thesaurus ParseThesaurusXml(std::string_view xml) {
  pt::ptree tree;
  std::istringstream in{std::string(xml)};
  try {
    pt::read_xml(in, tree, pt::xml_parser::no_comments);
  } catch (const pt::xml_parser::xml_parser_error& e) {
    throw ParseError("malformed thesaurus XML: " + e.message(),
                     static_cast<int>(e.line()));
  }

  Thesaurus th;
  RecordBuilder builder{th};
  const NsScope root;
  for (const auto& [name, child] : tree) builder.Visit(name, child, root, "");

  for (auto it = th.concepts.begin(); it != th.concepts.end();) {
    if (it->second.pref_labels.empty()) {
      th.warnings.push_back("concept '" + it->first +
                            "' has no prefLabel; skipped");
      ++th.skipped;
      it = th.concepts.erase(it);
    } else {
      ++it;
    }
  }
  th.label_index = BuildLabelIndex(th.concepts);
  return th;
}

Thesaurus ParseThesaurus(const std::filesystem::path& path) {
  return ParseThesaurusXml(ReadUtf8File(path));
}

std::string FormatLabelIndex(const LabelIndex& index) {
  std::string out;
  for (const auto& [label, ids] : index) {
    for (const auto& id : ids) out += label + "\t" + id + "\n";
  }
  return out;
}

LabelIndex ParseLabelIndex(std::string_view content) {
  LabelIndex index;
  std::istringstream in{std::string(content)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab + 1 >= line.size())
      throw ParseError("expected 'label<TAB>concept_id'", line_no);
    index[line.substr(0, tab)].insert(line.substr(tab + 1));
  }
  return index;
}

namespace {

class Matcher {
 public:
  Matcher(const Thesaurus& th, const MatchPolicy& policy,
          const StemmerRuleset* ruleset)
      : policy_(policy), ruleset_(ruleset) {
    if (policy.stem_labels && ruleset == nullptr)
      throw ConfigError("stem_labels matching needs a stemmer ruleset");
    for (const auto& [id, c] : th.concepts) {
      for (const auto* labels : {&c.pref_labels, &c.alt_labels, &c.hidden_labels}) {
        for (const auto& l : *labels) {
          const auto words = Key(l.text);
          exact_[text::Join(words, " ")].insert(id);
          if (policy.allow_token_subset)
            token_sets_.push_back({std::set<std::string>(words.begin(), words.end()), id});
        }
      }
    }
  }

  std::vector<std::string> Key(std::string_view phrase) const {
    std::string base = text::ToNfc(phrase);
    if (policy_.fold_case) base = text::ToLower(base);
    std::vector<std::string> words = text::SplitWords(text::CollapseWhitespace(base));
    for (auto& w : words) {
      if (policy_.stem_labels) w = Stem(w, *ruleset_);
      if (policy_.fold_diacritics) w = text::StripDiacritics(w);
    }
    return words;
  }

  std::optional<std::string> Match(const TermInput& term, bool compound) const {
    const auto words = Key(term.display);
    if (words.empty()) return std::nullopt;
    if (const auto it = exact_.find(text::Join(words, " ")); it != exact_.end())
      return *it->second.begin();
    if (!compound || !policy_.allow_token_subset) return std::nullopt;
    std::optional<std::string> best;
    for (const auto& [tokens, id] : token_sets_) {
      const bool all = std::all_of(words.begin(), words.end(),
                                   [&](const std::string& w) { return tokens.contains(w); });
      if (all && (!best || id < *best)) best = id;
    }
    return best;
  }

 private:
  MatchPolicy policy_;
  const StemmerRuleset* ruleset_;
  std::map<std::string, std::set<std::string>> exact_;
  std::vector<std::pair<std::set<std::string>, std::string>> token_sets_;
};

}  // namespace

std::vector<ConceptMatch> ExtractConcepts(
    const std::vector<TermInput>& simple_terms,
    const std::vector<TermInput>& compound_terms, const Thesaurus& thesaurus,
    const MatchPolicy& policy, const StemmerRuleset* ruleset) {
  std::vector<ConceptMatch> out;
  if (thesaurus.concepts.empty()) return out;
  const Matcher matcher(thesaurus, policy, ruleset);

  std::set<TokenSeq> seen;
  std::set<std::string> covered;  // stems of kept compounds
  for (const auto& t : compound_terms) {
    if (seen.contains(t.stems)) continue;
    if (const auto id = matcher.Match(t, true)) {
      seen.insert(t.stems);
      covered.insert(t.stems.begin(), t.stems.end());
      out.push_back({t.display, t.stems, *id, t.score, true});
    }
  }
  for (const auto& t : simple_terms) {
    if (seen.contains(t.stems)) continue;
    if (t.stems.size() == 1 && covered.contains(t.stems[0])) continue;
    if (const auto id = matcher.Match(t, false)) {
      seen.insert(t.stems);
      out.push_back({t.display, t.stems, *id, t.score, false});
    }
  }
  return out;
}

std::string KeywordReportJson(const std::vector<ConceptMatch>& matches) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : matches)
    arr.push_back({{"keyword", m.keyword}, {"concept_id", m.concept_id}});
  return arr.dump(2) + "\n";
}

}  // namespace tea
