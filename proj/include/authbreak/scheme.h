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
// The dynamic-ID smart-card scheme: registration, login and mutual
// authentication with session-key agreement. Every function here is a pure
// function of its arguments.
//
// Byte layouts of the hash preimages (|| is plain concatenation):
//   RPW = h(r[16] || PW)
//   J   = h(x[32] || len(ID)[1] || ID || N[4, big-endian])
//   L   = J ^ RPW
//   C1  = h1(J || T_U[8, big-endian])
//   C2  = h1(J || C1 || T_S[8, big-endian])
//   sk  = h1(J || C2)

#ifndef AUTHBREAK_SCHEME_H_
#define AUTHBREAK_SCHEME_H_

#include <cstdint>

#include "authbreak/hash_suite.h"
#include "authbreak/types.h"

namespace authbreak::scheme {

// Default acceptance window for timestamps, in seconds.
inline constexpr std::uint64_t kDefaultWindowSeconds = 60;

// |now - t| <= window. A window of 0 accepts only t == now.
bool IsFresh(Timestamp t, Timestamp now, std::uint64_t window_seconds);

// Registration, user side: RPW = h(r || PW).
MaskedPassword DeriveRpw(const HashSuite& suite, const Salt& r,
                         const Password& pw);

// J = h(x || ID || N). Throws std::invalid_argument when n == 0.
LongTermSecret DeriveLongTermSecret(const HashSuite& suite, const MasterKey& x,
                                    const UserIdentity& id, std::uint32_t n);

// Registration, server side: L = J ^ RPW, card = {L, r}. Throws
// std::logic_error if rpw was produced under a different digest length.
SmartCard ServerIssueCard(const HashSuite& suite, const MasterKey& x,
                          const UserIdentity& id, std::uint32_t n,
                          const MaskedPassword& rpw, const Salt& r);

// Card-side unmasking: J = L ^ h(r || PW). Only the owner's password yields
// the server's J.
LongTermSecret RecoverLongTermSecret(const HashSuite& suite,
                                     const SmartCard& card, const Password& pw);

Digest ComputeC1(const HashSuite& suite, const LongTermSecret& j,
                 Timestamp t_u);
Digest ComputeC2(const HashSuite& suite, const LongTermSecret& j,
                 const Digest& c1, Timestamp t_s);
SessionKey DeriveSessionKey(const HashSuite& suite, const LongTermSecret& j,
                            const Digest& c2);

// Login: M1 = <h1(J || T_U), T_U>. A wrong password still yields a
// well-formed message; the server is the one to reject it.
LoginMessage CardLogin(const HashSuite& suite, const SmartCard& card,
                       const Password& pw, Timestamp t_u);

// Server step 1. Rejects kStaleTimestamp when T_U is outside the window,
// otherwise returns the first record (registry order) whose recomputed C1
// matches, or kUnknownOrigin.
Verified<ServerRecord> ServerVerifyLogin(const HashSuite& suite,
                                         const ServerState& state,
                                         const LoginMessage& m1, Timestamp now,
                                         std::uint64_t window_seconds);

struct ServerResponse {
  ResponseMessage m2;
  SessionKey sk;
};

// Server step 2: C2 and the server's copy of sk, with J recomputed from
// (x, ID, N).
ServerResponse ServerRespond(const HashSuite& suite, const MasterKey& x,
                             const ServerRecord& record, const Digest& c1,
                             Timestamp t_s);

// User step 3: checks T_S freshness, then C2, then derives sk.
Verified<SessionKey> UserVerifyResponse(const HashSuite& suite,
                                        const LongTermSecret& j,
                                        const Digest& c1,
                                        const ResponseMessage& m2,
                                        Timestamp now,
                                        std::uint64_t window_seconds);

}  // namespace authbreak::scheme

#endif  // AUTHBREAK_SCHEME_H_
