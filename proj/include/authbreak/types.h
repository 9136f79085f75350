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

#ifndef AUTHBREAK_TYPES_H_
#define AUTHBREAK_TYPES_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "authbreak/bytes.h"
#include "authbreak/hash_suite.h"

namespace authbreak {

// 1 to 64 bytes. Throws std::invalid_argument otherwise.
class UserIdentity {
 public:
  static constexpr std::size_t kMaxLength = 64;

  explicit UserIdentity(std::string id);

  const std::string& str() const { return id_; }
  ByteView bytes() const { return AsBytes(id_); }

  friend bool operator==(const UserIdentity&, const UserIdentity&) = default;

 private:
  std::string id_;
};

// 1 to 128 bytes. Throws std::invalid_argument otherwise.
class Password {
 public:
  static constexpr std::size_t kMaxLength = 128;

  explicit Password(std::string pw);

  const std::string& str() const { return pw_; }
  ByteView bytes() const { return AsBytes(pw_); }

  friend bool operator==(const Password&, const Password&) = default;

 private:
  std::string pw_;
};

struct Salt {
  static constexpr std::size_t kLength = 16;
  std::array<std::uint8_t, kLength> bytes{};

  friend bool operator==(const Salt&, const Salt&) = default;
};

struct MasterKey {
  static constexpr std::size_t kLength = 32;
  std::array<std::uint8_t, kLength> bytes{};

  friend bool operator==(const MasterKey&, const MasterKey&) = default;
};

// Seconds since an agreed epoch. Encodes as 8 big-endian bytes.
struct Timestamp {
  std::uint64_t seconds = 0;

  Bytes Encode() const;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// |a - b| without wrap-around.
std::uint64_t AbsoluteDifference(Timestamp a, Timestamp b);

// RPW = h(r || PW).
struct MaskedPassword {
  Digest value;
  friend bool operator==(const MaskedPassword&, const MaskedPassword&) = default;
};

// J = h(x || ID || N), shared implicitly by card and server.
struct LongTermSecret {
  Digest value;
  friend bool operator==(const LongTermSecret&, const LongTermSecret&) = default;
};

struct SessionKey {
  Digest value;
  friend bool operator==(const SessionKey&, const SessionKey&) = default;
};

// Card contents {L, r}. For the legitimate owner, l ^ h(r || PW) == J.
struct SmartCard {
  Digest l;
  Salt r;
  friend bool operator==(const SmartCard&, const SmartCard&) = default;
};

struct ServerRecord {
  UserIdentity id;
  std::uint32_t n = 1;  // registration count, >= 1
  friend bool operator==(const ServerRecord&, const ServerRecord&) = default;
};

class DuplicateIdentityError : public std::runtime_error {
 public:
  explicit DuplicateIdentityError(const UserIdentity& id)
      : std::runtime_error("identity already registered: " + id.str()),
        id_(id) {}
  const UserIdentity& id() const { return id_; }

 private:
  UserIdentity id_;
};

// Master key plus the registry, in insertion order. Identities are unique.
class ServerState {
 public:
  explicit ServerState(MasterKey x) : x_(x) {}

  const MasterKey& master_key() const { return x_; }
  const std::vector<ServerRecord>& records() const { return records_; }

  bool Contains(const UserIdentity& id) const;
  const ServerRecord* Find(const UserIdentity& id) const;

  // Throws DuplicateIdentityError if the identity is present, and
  // std::invalid_argument if record.n == 0.
  const ServerRecord& Add(ServerRecord record);
  bool Remove(const UserIdentity& id);

  friend bool operator==(const ServerState&, const ServerState&) = default;

 private:
  MasterKey x_;
  std::vector<ServerRecord> records_;
};

// M1 = <C1, T_U>. Carries no identity.
struct LoginMessage {
  static constexpr std::uint8_t kTag = 0x01;
  Digest c1;
  Timestamp t_u;

  // 0x01 || C1 || T_U (8 bytes, big-endian).
  Bytes Encode() const;
  static std::optional<LoginMessage> Decode(ByteView wire);
  friend bool operator==(const LoginMessage&, const LoginMessage&) = default;
};

// M2 = <C2, T_S>.
struct ResponseMessage {
  static constexpr std::uint8_t kTag = 0x02;
  Digest c2;
  Timestamp t_s;

  // 0x02 || C2 || T_S (8 bytes, big-endian).
  Bytes Encode() const;
  static std::optional<ResponseMessage> Decode(ByteView wire);
  friend bool operator==(const ResponseMessage&, const ResponseMessage&) = default;
};

enum class Rejection { kStaleTimestamp, kUnknownOrigin, kBadAuthenticator };

std::string_view RejectionName(Rejection rejection);

// Either an accepted value or the reason it was refused.
template <typename T>
class Verified {
 public:
  Verified(T value) : value_(std::move(value)) {}  // NOLINT
  Verified(Rejection rejection) : rejection_(rejection) {}  // NOLINT

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!value_) throw std::logic_error("Verified::value on a rejection");
    return *value_;
  }
  Rejection rejection() const {
    if (value_) throw std::logic_error("Verified::rejection on a success");
    return *rejection_;
  }

 private:
  std::optional<T> value_;
  std::optional<Rejection> rejection_;
};

}  // namespace authbreak

#endif  // AUTHBREAK_TYPES_H_
