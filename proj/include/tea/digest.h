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

#ifndef TEA_DIGEST_H_
#define TEA_DIGEST_H_

#include <memory>
#include <string>
#include <string_view>

namespace tea {

// Incremental SHA-256. Fields added with AddField are length-prefixed so
// that ("ab","c") and ("a","bc") hash differently.
class Sha256 {
 public:
  Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void Update(std::string_view data);
  void AddField(std::string_view field);
  std::string HexDigest();

 private:
  struct CtxDeleter {
    void operator()(void* ctx) const;
  };
  std::unique_ptr<void, CtxDeleter> ctx_;
};

std::string Sha256Hex(std::string_view data);

}  // namespace tea

#endif  // TEA_DIGEST_H_
