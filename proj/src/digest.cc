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

#include "tea/digest.h"

#include <openssl/evp.h>

#include <cstdint>
#include <stdexcept>

namespace tea {

namespace {
EVP_MD_CTX* Ctx(void* p) { return static_cast<EVP_MD_CTX*>(p); }
}  // namespace

void Sha256::CtxDeleter::operator()(void* ctx) const {
  EVP_MD_CTX_free(Ctx(ctx));
}

Sha256::Sha256() : ctx_(EVP_MD_CTX_new()) {
  if (!ctx_ || EVP_DigestInit_ex(Ctx(ctx_.get()), EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 initialization failed");
}

void Sha256::Update(std::string_view data) {
  EVP_DigestUpdate(Ctx(ctx_.get()), data.data(), data.size());
}

void Sha256::AddField(std::string_view field) {
  uint64_t n = field.size();
  unsigned char len[8];
  for (int i = 7; i >= 0; --i) {
    len[i] = static_cast<unsigned char>(n & 0xFF);
    n >>= 8;
  }
  EVP_DigestUpdate(Ctx(ctx_.get()), len, sizeof(len));
  Update(field);
}

std::string Sha256::HexDigest() {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int md_len = 0;
  EVP_DigestFinal_ex(Ctx(ctx_.get()), md, &md_len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(md_len * 2);
  for (unsigned int i = 0; i < md_len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

std::string Sha256Hex(std::string_view data) {
  Sha256 h;
  h.Update(data);
  return h.HexDigest();
}

}  // namespace tea
