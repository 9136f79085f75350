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

#include "authbreak/scheme.h"

#include <stdexcept>

namespace authbreak::scheme {

bool IsFresh(Timestamp t, Timestamp now, std::uint64_t window_seconds) {
  return AbsoluteDifference(now, t) <= window_seconds;
}

MaskedPassword DeriveRpw(const HashSuite& suite, const Salt& r,
                         const Password& pw) {
  return {suite.H({r.bytes, pw.bytes()})};
}

LongTermSecret DeriveLongTermSecret(const HashSuite& suite, const MasterKey& x,
                                    const UserIdentity& id, std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("registration counter must be >= 1");
  const std::uint8_t id_len = static_cast<std::uint8_t>(id.bytes().size());
  Bytes counter;
  AppendBigEndian32(counter, n);
  return {suite.H({x.bytes, ByteView(&id_len, 1), id.bytes(), counter})};
}

SmartCard ServerIssueCard(const HashSuite& suite, const MasterKey& x,
                          const UserIdentity& id, std::uint32_t n,
                          const MaskedPassword& rpw, const Salt& r) {
  const LongTermSecret j = DeriveLongTermSecret(suite, x, id, n);
  if (j.value.size() != rpw.value.size()) {
    throw std::logic_error("RPW digest length does not match the suite");
  }
  return {j.value ^ rpw.value, r};
}

LongTermSecret RecoverLongTermSecret(const HashSuite& suite,
                                     const SmartCard& card,
                                     const Password& pw) {
  return {card.l ^ DeriveRpw(suite, card.r, pw).value};
}

Digest ComputeC1(const HashSuite& suite, const LongTermSecret& j,
                 Timestamp t_u) {
  return suite.H1({j.value.bytes(), t_u.Encode()});
}

Digest ComputeC2(const HashSuite& suite, const LongTermSecret& j,
                 const Digest& c1, Timestamp t_s) {
  return suite.H1({j.value.bytes(), c1.bytes(), t_s.Encode()});
}

SessionKey DeriveSessionKey(const HashSuite& suite, const LongTermSecret& j,
                            const Digest& c2) {
  return {suite.H1({j.value.bytes(), c2.bytes()})};
}

LoginMessage CardLogin(const HashSuite& suite, const SmartCard& card,
                       const Password& pw, Timestamp t_u) {
  const LongTermSecret j = RecoverLongTermSecret(suite, card, pw);
  return {ComputeC1(suite, j, t_u), t_u};
}

Verified<ServerRecord> ServerVerifyLogin(const HashSuite& suite,
                                         const ServerState& state,
                                         const LoginMessage& m1, Timestamp now,
                                         std::uint64_t window_seconds) {
  if (!IsFresh(m1.t_u, now, window_seconds)) return Rejection::kStaleTimestamp;
  // M1 is anonymous, so the only way to find the sender is to try everyone.
  for (const ServerRecord& record : state.records()) {
    const LongTermSecret j =
        DeriveLongTermSecret(suite, state.master_key(), record.id, record.n);
    if (ComputeC1(suite, j, m1.t_u) == m1.c1) return record;
  }
  return Rejection::kUnknownOrigin;
}

ServerResponse ServerRespond(const HashSuite& suite, const MasterKey& x,
                             const ServerRecord& record, const Digest& c1,
                             Timestamp t_s) {
  const LongTermSecret j = DeriveLongTermSecret(suite, x, record.id, record.n);
  Digest c2 = ComputeC2(suite, j, c1, t_s);
  SessionKey sk = DeriveSessionKey(suite, j, c2);
  return {ResponseMessage{std::move(c2), t_s}, std::move(sk)};
}

Verified<SessionKey> UserVerifyResponse(const HashSuite& suite,
                                        const LongTermSecret& j,
                                        const Digest& c1,
                                        const ResponseMessage& m2,
                                        Timestamp now,
                                        std::uint64_t window_seconds) {
  if (!IsFresh(m2.t_s, now, window_seconds)) return Rejection::kStaleTimestamp;
  if (!(ComputeC2(suite, j, c1, m2.t_s) == m2.c2)) {
    return Rejection::kBadAuthenticator;
  }
  return DeriveSessionKey(suite, j, m2.c2);
}

}  // namespace authbreak::scheme
