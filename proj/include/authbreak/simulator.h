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
// Deterministic session orchestration over a logical clock. Each channel hop
// costs one clock tick. Nothing here is thread-safe; run independent
// simulations on independent objects.

#ifndef AUTHBREAK_SIMULATOR_H_
#define AUTHBREAK_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "authbreak/hash_suite.h"
#include "authbreak/scheme.h"
#include "authbreak/types.h"

namespace authbreak::sim {

// Seeded generator used for every salt, key and scenario choice.
using Rng = std::mt19937_64;

Salt RandomSalt(Rng& rng);
MasterKey RandomMasterKey(Rng& rng);

class LogicalClock {
 public:
  explicit LogicalClock(Timestamp start = {}, std::uint64_t step_seconds = 1)
      : now_(start), step_(step_seconds) {}

  Timestamp now() const { return now_; }
  std::uint64_t step() const { return step_; }

  void Tick() { now_.seconds += step_; }
  void Advance(std::uint64_t seconds) { now_.seconds += seconds; }

 private:
  Timestamp now_;
  std::uint64_t step_;
};

enum class SessionOutcome {
  kCompleted,
  kRejectedStale,
  kRejectedUnknown,
  kRejectedBadAuthenticator,
};

std::string_view SessionOutcomeName(SessionOutcome outcome);
std::optional<SessionOutcome> ParseSessionOutcome(std::string_view name);

// Public-channel record of one session. Holds no secret material.
struct SessionTranscript {
  std::uint64_t session_index = 0;
  SessionOutcome outcome = SessionOutcome::kCompleted;
  LoginMessage m1;
  std::optional<ResponseMessage> m2;

  friend bool operator==(const SessionTranscript&,
                         const SessionTranscript&) = default;
};

// "<index> <outcome> <hex(m1)> <hex(m2) or ->", lowercase hex, no newline.
std::string FormatTranscriptLine(const SessionTranscript& transcript);
// Strict inverse of FormatTranscriptLine; nullopt on any deviation.
std::optional<SessionTranscript> ParseTranscriptLine(std::string_view line);

// A user holding a card and knowing its password.
struct UserDevice {
  SmartCard card;
  Password pw;
};

// Runs the registration phase for a new identity with N = 1 and returns the
// card the user ends up holding. Throws DuplicateIdentityError.
SmartCard Enroll(const HashSuite& suite, ServerState& server,
                 const UserIdentity& id, const Password& pw, const Salt& r);

struct HonestSession {
  SessionTranscript transcript;
  std::optional<SessionKey> user_sk;
  std::optional<SessionKey> server_sk;
};

// login -> server verify -> respond -> user verify, with one tick between
// each send and its receipt. `user_clock_skew` offsets the user's notion of
// time when stamping T_U, to inject stale logins.
HonestSession RunHonestSession(const HashSuite& suite, const UserDevice& user,
                               const ServerState& server, LogicalClock& clock,
                               std::uint64_t window_seconds,
                               std::uint64_t session_index,
                               std::int64_t user_clock_skew = 0);

// Re-delivers a previously completed M1 at the current clock. The scheme
// keeps no replay cache, so a replay inside the window is accepted. Throws
// std::invalid_argument if `prior` did not complete.
Verified<ServerRecord> RunReplayedLogin(const HashSuite& suite,
                                        const SessionTranscript& prior,
                                        const ServerState& server,
                                        const LogicalClock& clock,
                                        std::uint64_t window_seconds);

// What a passive adversary holds: every transcript, plus the card contents
// when the scenario grants extraction.
struct AdversaryView {
  std::vector<SessionTranscript> transcripts;
  std::optional<SmartCard> card_dump;
};

AdversaryView Eavesdrop(std::span<const SessionTranscript> sessions,
                        std::optional<SmartCard> card_dump = std::nullopt);

struct ScenarioConfig {
  UserIdentity id{"alice"};
  Password pw{"alice-pw"};
  std::size_t sessions = 3;
  Timestamp start{1'700'000'000};
  std::uint64_t window_seconds = scheme::kDefaultWindowSeconds;
  std::uint64_t gap_seconds = 300;  // idle time between sessions
};

// One server, one enrolled user, `sessions` honest runs.
struct Scenario {
  ServerState server;
  SmartCard card;
  std::vector<HonestSession> sessions;

  std::vector<SessionTranscript> Transcripts() const;
};

Scenario RunScenario(const HashSuite& suite, Rng& rng,
                     const ScenarioConfig& config);

}  // namespace authbreak::sim

#endif  // AUTHBREAK_SIMULATOR_H_
