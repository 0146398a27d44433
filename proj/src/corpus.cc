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

#include "tea/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tea/digest.h"
#include "tea/error.h"
#include "tea/text.h"

namespace tea {

using json = nlohmann::json;

Corpus::Corpus(std::vector<ImageInfo> images,
               std::vector<Annotation> annotations)
    : annotations_(std::move(annotations)) {
  for (auto& image : images) {
    if (image.image_id.empty())
      throw ValidationError("image with empty image_id");
    const std::string id = image.image_id;
    if (!images_.emplace(id, std::move(image)).second)
      throw ValidationError("duplicate image_id '" + id + "'");
  }
  std::set<std::string> seen;
  for (const auto& a : annotations_) {
    if (a.annotation_id.empty())
      throw ValidationError("annotation with empty annotation_id");
    if (!seen.insert(a.annotation_id).second)
      throw ValidationError("duplicate annotation_id '" + a.annotation_id +
                            "'");
    if (!images_.contains(a.image_id))
      throw ValidationError("annotation '" + a.annotation_id +
                            "' references unknown image_id '" + a.image_id +
                            "'");
    if (text::Trim(a.text).empty())
      throw ValidationError("annotation '" + a.annotation_id +
                            "' has blank text");
  }
}

std::vector<size_t> Corpus::AnnotationsOf(const std::string& image_id) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < annotations_.size(); ++i) {
    if (annotations_[i].image_id == image_id) out.push_back(i);
  }
  return out;
}

std::string ReadUtf8File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IngestionError("error reading file: " + path.string());
  std::string data = buf.str();
  if (!text::IsValidUtf8(data))
    throw IngestionError("file is not valid UTF-8: " + path.string());
  return data;
}

namespace {

std::string RequireString(const json& obj, const char* key,
                          const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw ValidationError(where + ": missing string field '" + key + "'");
  return it->get<std::string>();
}

std::optional<std::string> OptionalString(const json& obj, const char* key,
                                          const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string())
    throw ValidationError(where + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

Corpus ParseCorpusManifest(const std::string& json_text,
                           const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("manifest must be a JSON object");

  std::vector<ImageInfo> images;
  if (const auto it = doc.find("images"); it != doc.end()) {
    if (!it->is_array()) throw ValidationError("'images' must be an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      const std::string where = "images[" + std::to_string(i) + "]";
      if (!e.is_object()) throw ValidationError(where + " must be an object");
      ImageInfo info;
      info.image_id = RequireString(e, "image_id", where);
      info.name = OptionalString(e, "name", where).value_or(info.image_id);
      info.path = OptionalString(e, "path", where);
      images.push_back(std::move(info));
    }
  }

  std::vector<Annotation> annotations;
  if (const auto it = doc.find("annotations"); it != doc.end()) {
    if (!it->is_array())
      throw ValidationError("'annotations' must be an array");
    for (size_t i = 0; i < it->size(); ++i) {
      const json& e = (*it)[i];
      const std::string where = "annotations[" + std::to_string(i) + "]";
      if (!e.is_object()) throw ValidationError(where + " must be an object");
      Annotation a;
      a.annotation_id = RequireString(e, "annotation_id", where);
      a.image_id = RequireString(e, "image_id", where);
      a.author = OptionalString(e, "author", where);
      const auto inline_text = OptionalString(e, "text", where);
      const auto text_path = OptionalString(e, "text_path", where);
      if (inline_text && text_path)
        throw ValidationError(where + ": give either 'text' or 'text_path'");
      if (inline_text) {
        if (!text::IsValidUtf8(*inline_text))
          throw IngestionError(where + ": text is not valid UTF-8");
        a.text = *inline_text;
      } else if (text_path) {
        a.text = ReadUtf8File(base_dir / *text_path);
      } else {
        throw ValidationError(where + ": missing 'text' or 'text_path'");
      }
      annotations.push_back(std::move(a));
    }
  }
  return Corpus(std::move(images), std::move(annotations));
}

Corpus LoadCorpus(const std::filesystem::path& manifest_path) {
  const std::string content = ReadUtf8File(manifest_path);
  return ParseCorpusManifest(content, manifest_path.parent_path());
}

std::string CorpusFingerprint(const Corpus& corpus) {
  std::vector<const Annotation*> sorted;
  sorted.reserve(corpus.size());
  for (const auto& a : corpus.annotations()) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(),
            [](const Annotation* x, const Annotation* y) {
              return x->annotation_id < y->annotation_id;
            });
  Sha256 h;
  h.AddField("tea-corpus-v1");
  for (const Annotation* a : sorted) {
    h.AddField(a->annotation_id);
    h.AddField(a->image_id);
    h.AddField(a->text);
  }
  return h.HexDigest();
}

}  // namespace tea
