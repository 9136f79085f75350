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

#ifndef AUTHBREAK_HASH_SUITE_H_
#define AUTHBREAK_HASH_SUITE_H_

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include "authbreak/bytes.h"

namespace authbreak {

enum class HashAlgorithm { kSha256, kSha3_256 };

std::string_view HashAlgorithmName(HashAlgorithm algorithm);
std::optional<HashAlgorithm> ParseHashAlgorithm(std::string_view name);

// A hash output of whatever length the active suite produces. Comparison
// with == is constant-time.
class Digest {
 public:
  Digest() = default;
  explicit Digest(Bytes bytes) : bytes_(std::move(bytes)) {}

  static Digest Zero(std::size_t length) { return Digest(Bytes(length, 0)); }
  static std::optional<Digest> FromHex(std::string_view hex);

  ByteView bytes() const { return bytes_; }
  std::size_t size() const { return bytes_.size(); }
  std::string Hex() const { return HexEncode(bytes_); }

  friend bool operator==(const Digest& a, const Digest& b) {
    return ConstantTimeEquals(a.bytes_, b.bytes_);
  }

 private:
  Bytes bytes_;
};

Digest operator^(const Digest& a, const Digest& b);

// The two one-way functions of the scheme, h and h1, realised over one
// primitive with a leading domain-separation byte:
//   h(m)  = H(0x00 || m)
//   h1(m) = H(0x01 || m)
// Inputs are passed as a list of segments that are hashed as their
// concatenation. A digest_length below the primitive's native width
// truncates the output; that mode exists for exhaustive toy-universe tests.
class HashSuite {
 public:
  static constexpr std::size_t kDefaultDigestLength = 32;

  explicit HashSuite(HashAlgorithm algorithm = HashAlgorithm::kSha256,
                     std::size_t digest_length = kDefaultDigestLength);

  HashAlgorithm algorithm() const { return algorithm_; }
  std::size_t digest_length() const { return digest_length_; }

  Digest H(std::initializer_list<ByteView> segments) const;
  Digest H1(std::initializer_list<ByteView> segments) const;

 private:
  Digest Compute(std::uint8_t domain,
                 std::initializer_list<ByteView> segments) const;

  HashAlgorithm algorithm_;
  std::size_t digest_length_;
};

}  // namespace authbreak

#endif  // AUTHBREAK_HASH_SUITE_H_
