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
//
// Line-based text persistence for server state and smart cards.
//
// Registry:
//   authbreak-registry v1 <64 hex: master key x>
//   <n decimal> <identity utf-8>          (one line per record, in order)
//
// Card:
//   authbreak-card v1
//   L=<64 hex>
//   r=<32 hex>
//
// LF line endings, UTF-8, no BOM. Hex is written lowercase and read in either
// case. The master key and L are stored in the clear: this is an analysis
// workbench, and the attacks start from exactly this material.
//
// Writes go to a sibling temporary file that is renamed over the target, so
// readers never see a torn file. There is no cross-process locking.

#ifndef AUTHBREAK_STORE_H_
#define AUTHBREAK_STORE_H_

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "authbreak/types.h"

namespace authbreak::store {

enum class StoreErrorKind { kIo, kMalformedLine, kDuplicateIdentity, kBadVersion };

std::string_view StoreErrorKindName(StoreErrorKind kind);

class StoreError : public std::runtime_error {
 public:
  StoreError(StoreErrorKind kind, std::size_t line, const std::string& detail);

  StoreErrorKind kind() const { return kind_; }
  // 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  StoreErrorKind kind_;
  std::size_t line_;
};

inline constexpr std::string_view kRegistryMagic = "authbreak-registry";
inline constexpr std::string_view kCardMagic = "authbreak-card";
inline constexpr std::string_view kVersion = "v1";

// Throws std::invalid_argument for identities that cannot be written as one
// UTF-8 line (invalid UTF-8, CR or LF).
std::string FormatRegistry(const ServerState& state);
ServerState ParseRegistry(std::string_view text);

// Throws std::invalid_argument unless card.l is 32 bytes.
std::string FormatCard(const SmartCard& card);
SmartCard ParseCard(std::string_view text);

void SaveRegistry(const ServerState& state, const std::filesystem::path& path);
ServerState LoadRegistry(const std::filesystem::path& path);

void SaveCard(const SmartCard& card, const std::filesystem::path& path);
SmartCard LoadCard(const std::filesystem::path& path);

// Atomic replace: write `contents` to a temporary sibling, then rename.
void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents);
std::string ReadFile(const std::filesystem::path& path);

bool IsValidUtf8(std::string_view s);

}  // namespace authbreak::store

#endif  // AUTHBREAK_STORE_H_
