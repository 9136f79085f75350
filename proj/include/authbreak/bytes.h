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

#ifndef AUTHBREAK_BYTES_H_
#define AUTHBREAK_BYTES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace authbreak {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Lowercase hex, two characters per byte.
std::string HexEncode(ByteView bytes);

// Accepts upper- and lowercase digits. Returns nullopt on odd length or any
// non-hex character.
std::optional<Bytes> HexDecode(std::string_view hex);

// Byte-wise XOR of two equal-length strings. Throws std::logic_error on a
// length mismatch.
Bytes XorBytes(ByteView a, ByteView b);

// Equality whose running time depends only on the lengths.
bool ConstantTimeEquals(ByteView a, ByteView b);

void AppendBigEndian32(Bytes& out, std::uint32_t value);
void AppendBigEndian64(Bytes& out, std::uint64_t value);
std::uint64_t ReadBigEndian64(ByteView bytes);

inline ByteView AsBytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// True when `needle` occurs contiguously inside `haystack`.
bool ContainsSubsequence(ByteView haystack, ByteView needle);

}  // namespace authbreak

#endif  // AUTHBREAK_BYTES_H_
