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

#include "authbreak/store.h"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace authbreak::store {

namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

[[noreturn]] void Malformed(std::size_t line, const std::string& why) {
  throw StoreError(StoreErrorKind::kMalformedLine, line, why);
}

template <std::size_t N>
std::array<std::uint8_t, N> ParseFixedHex(std::string_view hex,
                                          std::size_t line,
                                          std::string_view what) {
  auto bytes = hex.size() == 2 * N ? HexDecode(hex) : std::nullopt;
  if (!bytes) {
    Malformed(line, std::string(what) + " must be " + std::to_string(2 * N) +
                        " hex characters");
  }
  std::array<std::uint8_t, N> out{};
  std::copy(bytes->begin(), bytes->end(), out.begin());
  return out;
}

void CheckIdentityWritable(const UserIdentity& id) {
  const std::string& s = id.str();
  if (s.find_first_of("\r\n") != std::string::npos || !IsValidUtf8(s)) {
    throw std::invalid_argument("identity is not a single UTF-8 line");
  }
}

std::uint32_t ParseCounter(std::string_view token, std::size_t line) {
  if (token.empty() || (token.size() > 1 && token[0] == '0') ||
      !std::all_of(token.begin(), token.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    Malformed(line, "registration counter must be a decimal number");
  }
  std::uint32_t n = 0;
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
  if (ec != std::errc() || end != token.data() + token.size() || n == 0) {
    Malformed(line, "registration counter out of range");
  }
  return n;
}

}  // namespace

std::string_view StoreErrorKindName(StoreErrorKind kind) {
  switch (kind) {
    case StoreErrorKind::kIo:
      return "io";
    case StoreErrorKind::kMalformedLine:
      return "malformed-line";
    case StoreErrorKind::kDuplicateIdentity:
      return "duplicate-identity";
    case StoreErrorKind::kBadVersion:
      return "bad-version";
  }
  return "unknown";
}

StoreError::StoreError(StoreErrorKind kind, std::size_t line,
                       const std::string& detail)
    : std::runtime_error(
          std::string(StoreErrorKindName(kind)) +
          (line > 0 ? "(" + std::to_string(line) + ")" : std::string()) +
          ": " + detail),
      kind_(kind),
      line_(line) {}

bool IsValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

std::string FormatRegistry(const ServerState& state) {
  std::string out(kRegistryMagic);
  out += ' ';
  out += kVersion;
  out += ' ';
  out += HexEncode(state.master_key().bytes);
  out += '\n';
  for (const ServerRecord& record : state.records()) {
    CheckIdentityWritable(record.id);
    out += std::to_string(record.n);
    out += ' ';
    out += record.id.str();
    out += '\n';
  }
  return out;
}

ServerState ParseRegistry(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty()) Malformed(1, "missing header");

  // Header: magic, version, key; exactly three space-separated tokens.
  const std::string_view header = lines[0];
  const std::size_t s1 = header.find(' ');
  const std::size_t s2 =
      s1 == std::string_view::npos ? s1 : header.find(' ', s1 + 1);
  if (s1 == std::string_view::npos || header.substr(0, s1) != kRegistryMagic) {
    Malformed(1, "not a registry header");
  }
  const std::string_view version =
      header.substr(s1 + 1, s2 == std::string_view::npos ? s2 : s2 - s1 - 1);
  if (version != kVersion) {
    throw StoreError(StoreErrorKind::kBadVersion, 1,
                     "unsupported registry version '" + std::string(version) +
                         "'");
  }
  if (s2 == std::string_view::npos) Malformed(1, "missing master key");
  MasterKey x{ParseFixedHex<MasterKey::kLength>(header.substr(s2 + 1), 1,
                                                "master key")};

  ServerState state(x);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = lines[i];
    const std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos) Malformed(lineno, "expected '<n> <id>'");
    const std::uint32_t n = ParseCounter(line.substr(0, sp), lineno);
    const std::string_view id_text = line.substr(sp + 1);
    if (id_text.empty() || id_text.size() > UserIdentity::kMaxLength ||
        id_text.find('\r') != std::string_view::npos || !IsValidUtf8(id_text)) {
      Malformed(lineno, "identity must be 1-64 bytes of UTF-8");
    }
    UserIdentity id{std::string(id_text)};
    if (state.Contains(id)) {
      throw StoreError(StoreErrorKind::kDuplicateIdentity, lineno,
                       "duplicate identity '" + id.str() + "'");
    }
    state.Add(ServerRecord{std::move(id), n});
  }
  return state;
}

std::string FormatCard(const SmartCard& card) {
  if (card.l.size() != 32) {
    throw std::invalid_argument("card files hold a 32-byte L");
  }
  std::string out(kCardMagic);
  out += ' ';
  out += kVersion;
  out += "\nL=";
  out += card.l.Hex();
  out += "\nr=";
  out += HexEncode(card.r.bytes);
  out += '\n';
  return out;
}

SmartCard ParseCard(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty()) Malformed(1, "missing header");
  const std::string_view header = lines[0];
  const std::size_t sp = header.find(' ');
  if (sp == std::string_view::npos || header.substr(0, sp) != kCardMagic) {
    Malformed(1, "not a card header");
  }
  if (header.substr(sp + 1) != kVersion) {
    throw StoreError(StoreErrorKind::kBadVersion, 1,
                     "unsupported card version '" +
                         std::string(header.substr(sp + 1)) + "'");
  }
  if (lines.size() != 3) {
    Malformed(std::min<std::size_t>(lines.size() + 1, 4),
              "card files have exactly three lines");
  }
  if (!lines[1].starts_with("L=")) Malformed(2, "expected 'L=<64 hex>'");
  if (!lines[2].starts_with("r=")) Malformed(3, "expected 'r=<32 hex>'");
  const auto l = ParseFixedHex<32>(lines[1].substr(2), 2, "L");
  SmartCard card;
  card.l = Digest(Bytes(l.begin(), l.end()));
  card.r.bytes = ParseFixedHex<Salt::kLength>(lines[2].substr(2), 3, "r");
  return card;
}

void WriteFileAtomically(const std::filesystem::path& path,
                         std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw StoreError(StoreErrorKind::kIo, 0,
                       "cannot write " + path.string());
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw StoreError(StoreErrorKind::kIo, 0,
                       "short write to " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw StoreError(StoreErrorKind::kIo, 0,
                     "cannot replace " + path.string() + ": " + ec.message());
  }
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw StoreError(StoreErrorKind::kIo, 0, "cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void SaveRegistry(const ServerState& state, const std::filesystem::path& path) {
  WriteFileAtomically(path, FormatRegistry(state));
}

ServerState LoadRegistry(const std::filesystem::path& path) {
  return ParseRegistry(ReadFile(path));
}

void SaveCard(const SmartCard& card, const std::filesystem::path& path) {
  WriteFileAtomically(path, FormatCard(card));
}

SmartCard LoadCard(const std::filesystem::path& path) {
  return ParseCard(ReadFile(path));
}

}  // namespace authbreak::store
