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
// The two breaks of the scheme, driven purely from an AdversaryView:
//
//  * Offline password guessing. With {L, r} from a lost card and one
//    eavesdropped M1 = <C1, T_U>, every candidate PW* can be checked locally:
//    J* = L ^ h(r || PW*), accept iff h1(J* || T_U) == C1.
//
//  * No forward secrecy. sk = h1(J || C2) and C2 travels in the clear, so
//    whoever learns J recovers every past session key.

#ifndef AUTHBREAK_ATTACKS_H_
#define AUTHBREAK_ATTACKS_H_

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "authbreak/hash_suite.h"
#include "authbreak/simulator.h"
#include "authbreak/types.h"

namespace authbreak::attacks {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GuessingResult {
  std::optional<Password> recovered;
  // Position of `recovered` in the candidate list.
  std::optional<std::size_t> index;
  std::uint64_t guesses_tried = 0;
  std::chrono::milliseconds elapsed{0};
};

// The per-candidate verification condition. Candidates that cannot be
// passwords (empty or longer than Password::kMaxLength) never match.
bool CandidateMatches(const HashSuite& suite, const SmartCard& card_dump,
                      const LoginMessage& m1, std::string_view candidate);

// Scans `candidates` in order against the first completed transcript and
// returns the first match. With jobs > 1 the list is split across threads;
// the result (including guesses_tried) equals the sequential one.
//
// Throws PreconditionError without a card dump or a completed transcript.
GuessingResult OfflineGuess(const HashSuite& suite,
                            const sim::AdversaryView& view,
                            std::span<const std::string> candidates,
                            unsigned jobs = 1);

// J = L ^ h(r || PW): what the card itself computes at login.
LongTermSecret DeriveJFromCard(const HashSuite& suite, const SmartCard& card,
                               const Password& pw);

struct RecoveredKey {
  std::uint64_t session_index = 0;
  SessionKey sk;
};

struct ForwardSecrecyBreak {
  std::vector<RecoveredKey> keys;  // session order
  std::size_t skipped = 0;         // transcripts without an M2
};

// sk = h1(J || C2) for every captured C2.
ForwardSecrecyBreak BreakForwardSecrecy(const HashSuite& suite,
                                        const LongTermSecret& j,
                                        const sim::AdversaryView& view);

// UTF-8, one candidate per line, LF endings. Blank lines are skipped. A
// trailing CR is kept as part of the word.
std::vector<std::string> ReadWordList(std::istream& in);

}  // namespace authbreak::attacks

#endif  // AUTHBREAK_ATTACKS_H_
