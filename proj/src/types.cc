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

#include "authbreak/types.h"

#include <algorithm>

namespace authbreak {

UserIdentity::UserIdentity(std::string id) : id_(std::move(id)) {
  if (id_.empty() || id_.size() > kMaxLength) {
    throw std::invalid_argument("identity must be 1-64 bytes");
  }
}

Password::Password(std::string pw) : pw_(std::move(pw)) {
  if (pw_.empty() || pw_.size() > kMaxLength) {
    throw std::invalid_argument("password must be 1-128 bytes");
  }
}

Bytes Timestamp::Encode() const {
  Bytes out;
  AppendBigEndian64(out, seconds);
  return out;
}

std::uint64_t AbsoluteDifference(Timestamp a, Timestamp b) {
  return a.seconds > b.seconds ? a.seconds - b.seconds : b.seconds - a.seconds;
}

bool ServerState::Contains(const UserIdentity& id) const {
  return Find(id) != nullptr;
}

const ServerRecord* ServerState::Find(const UserIdentity& id) const {
  auto it = std::find_if(records_.begin(), records_.end(),
                         [&](const ServerRecord& r) { return r.id == id; });
  return it == records_.end() ? nullptr : &*it;
}

const ServerRecord& ServerState::Add(ServerRecord record) {
  if (record.n == 0) {
    throw std::invalid_argument("registration counter must be >= 1");
  }
  if (Contains(record.id)) throw DuplicateIdentityError(record.id);
  records_.push_back(std::move(record));
  return records_.back();
}

bool ServerState::Remove(const UserIdentity& id) {
  auto it = std::find_if(records_.begin(), records_.end(),
                         [&](const ServerRecord& r) { return r.id == id; });
  if (it == records_.end()) return false;
  records_.erase(it);
  return true;
}

namespace {

Bytes EncodeTagged(std::uint8_t tag, const Digest& d, Timestamp t) {
  Bytes out;
  out.reserve(1 + d.size() + 8);
  out.push_back(tag);
  out.insert(out.end(), d.bytes().begin(), d.bytes().end());
  AppendBigEndian64(out, t.seconds);
  return out;
}

// The digest width is implied by the total length: 1 tag + digest + 8.
std::optional<std::pair<Digest, Timestamp>> DecodeTagged(std::uint8_t tag,
                                                         ByteView wire) {
  if (wire.size() < 1 + 1 + 8 || wire[0] != tag) return std::nullopt;
  const std::size_t digest_len = wire.size() - 9;
  Digest d(Bytes(wire.begin() + 1, wire.begin() + 1 + digest_len));
  Timestamp t{ReadBigEndian64(wire.subspan(1 + digest_len))};
  return std::make_pair(std::move(d), t);
}

}  // namespace

Bytes LoginMessage::Encode() const {
  return EncodeTagged(kTag, c1, t_u);
}

std::optional<LoginMessage> LoginMessage::Decode(ByteView wire) {
  auto parts = DecodeTagged(kTag, wire);
  if (!parts) return std::nullopt;
  return LoginMessage{std::move(parts->first), parts->second};
}

Bytes ResponseMessage::Encode() const {
  return EncodeTagged(kTag, c2, t_s);
}

std::optional<ResponseMessage> ResponseMessage::Decode(ByteView wire) {
  auto parts = DecodeTagged(kTag, wire);
  if (!parts) return std::nullopt;
  return ResponseMessage{std::move(parts->first), parts->second};
}

std::string_view RejectionName(Rejection rejection) {
  switch (rejection) {
    case Rejection::kStaleTimestamp:
      return "stale-timestamp";
    case Rejection::kUnknownOrigin:
      return "unknown-origin";
    case Rejection::kBadAuthenticator:
      return "bad-authenticator";
  }
  return "unknown";
}

}  // namespace authbreak
