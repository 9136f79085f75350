// Copyright 2026 The authbreak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "authbreak/hash_suite.h"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

namespace authbreak {

namespace {

const EVP_MD* ToEvp(HashAlgorithm algorithm) {
  switch (algorithm) {
    case HashAlgorithm::kSha256:
      return EVP_sha256();
    case HashAlgorithm::kSha3_256:
      return EVP_sha3_256();
  }
  throw std::invalid_argument("unknown hash algorithm");
}

struct MdCtxDeleter {
  void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

// One context per thread; parallel guessing workers hash concurrently.
EVP_MD_CTX* ThreadContext() {
  thread_local std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx(EVP_MD_CTX_new());
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  return ctx.get();
}

}  // namespace

std::string_view HashAlgorithmName(HashAlgorithm algorithm) {
  switch (algorithm) {
    case HashAlgorithm::kSha256:
      return "sha256";
    case HashAlgorithm::kSha3_256:
      return "sha3-256";
  }
  return "unknown";
}

std::optional<HashAlgorithm> ParseHashAlgorithm(std::string_view name) {
  if (name == "sha256") return HashAlgorithm::kSha256;
  if (name == "sha3-256") return HashAlgorithm::kSha3_256;
  return std::nullopt;
}

std::optional<Digest> Digest::FromHex(std::string_view hex) {
  auto bytes = HexDecode(hex);
  if (!bytes) return std::nullopt;
  return Digest(std::move(*bytes));
}

Digest operator^(const Digest& a, const Digest& b) {
  return Digest(XorBytes(a.bytes(), b.bytes()));
}

HashSuite::HashSuite(HashAlgorithm algorithm, std::size_t digest_length)
    : algorithm_(algorithm), digest_length_(digest_length) {
  const auto native = static_cast<std::size_t>(EVP_MD_get_size(ToEvp(algorithm)));
  if (digest_length == 0 || digest_length > native) {
    throw std::invalid_argument("digest length must be in [1, " +
                                std::to_string(native) + "]");
  }
}

Digest HashSuite::H(std::initializer_list<ByteView> segments) const {
  return Compute(0x00, segments);
}

Digest HashSuite::H1(std::initializer_list<ByteView> segments) const {
  return Compute(0x01, segments);
}

Digest HashSuite::Compute(std::uint8_t domain,
                          std::initializer_list<ByteView> segments) const {
  EVP_MD_CTX* ctx = ThreadContext();
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int out_len = 0;
  bool ok = EVP_DigestInit_ex(ctx, ToEvp(algorithm_), nullptr) == 1 &&
            EVP_DigestUpdate(ctx, &domain, 1) == 1;
  for (ByteView segment : segments) {
    if (!ok) break;
    ok = EVP_DigestUpdate(ctx, segment.data(), segment.size()) == 1;
  }
  ok = ok && EVP_DigestFinal_ex(ctx, out, &out_len) == 1;
  if (!ok) throw std::runtime_error("digest computation failed");
  return Digest(Bytes(out, out + digest_length_));
}

}  // namespace authbreak
