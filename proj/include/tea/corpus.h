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

// Annotation corpora: images plus the free-text expert comments attached to
// them. Each annotation is one document for the statistics downstream; an
// image with eight comments contributes eight documents.

#ifndef TEA_CORPUS_H_
#define TEA_CORPUS_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tea {

struct Annotation {
  std::string annotation_id;
  std::string image_id;
  std::optional<std::string> author;
  std::string text;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct ImageInfo {
  std::string image_id;
  std::string name;
  std::optional<std::string> path;

  friend bool operator==(const ImageInfo&, const ImageInfo&) = default;
};

// Immutable after construction. Annotation order is ingestion order and
// defines document indices.
class Corpus {
 public:
  Corpus() = default;

  // Validates the invariants: non-blank texts, unique annotation ids, and
  // every annotation bound to a declared image. Throws ValidationError.
  Corpus(std::vector<ImageInfo> images, std::vector<Annotation> annotations);

  const std::vector<Annotation>& annotations() const { return annotations_; }
  const std::map<std::string, ImageInfo>& images() const { return images_; }
  size_t size() const { return annotations_.size(); }
  bool empty() const { return annotations_.empty(); }

  // Indices into annotations() for one image, ascending.
  std::vector<size_t> AnnotationsOf(const std::string& image_id) const;

  friend bool operator==(const Corpus&, const Corpus&) = default;

 private:
  std::map<std::string, ImageInfo> images_;
  std::vector<Annotation> annotations_;
};

// Reads a JSON manifest. Annotation text is given inline ("text") or by a
// path relative to the manifest directory ("text_path").
Corpus LoadCorpus(const std::filesystem::path& manifest_path);

// Parses manifest JSON already in memory; relative text paths resolve
// against base_dir.
Corpus ParseCorpusManifest(const std::string& json_text,
                           const std::filesystem::path& base_dir);

// Hex SHA-256 over (annotation_id, image_id, text) triples sorted by
// annotation id, so manifest ordering does not affect it.
std::string CorpusFingerprint(const Corpus& corpus);

// Reads a whole file; throws IngestionError naming the path when it is
// missing, unreadable, or not valid UTF-8.
std::string ReadUtf8File(const std::filesystem::path& path);

}  // namespace tea

#endif  // TEA_CORPUS_H_
