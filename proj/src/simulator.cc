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

#include "authbreak/simulator.h"

#include <charconv>
#include <stdexcept>

namespace authbreak::sim {

namespace {

// Raw generator output rather than a distribution, so a seed produces the
// same bytes under every standard library.
template <std::size_t N>
void FillRandom(Rng& rng, std::array<std::uint8_t, N>& out) {
  for (std::size_t i = 0; i < N; i += 8) {
    std::uint64_t word = rng();
    for (std::size_t k = 0; k < 8 && i + k < N; ++k) {
      out[i + k] = static_cast<std::uint8_t>(word >> (8 * k));
    }
  }
}

SessionOutcome ToOutcome(Rejection rejection) {
  switch (rejection) {
    case Rejection::kStaleTimestamp:
      return SessionOutcome::kRejectedStale;
    case Rejection::kUnknownOrigin:
      return SessionOutcome::kRejectedUnknown;
    case Rejection::kBadAuthenticator:
      return SessionOutcome::kRejectedBadAuthenticator;
  }
  throw std::logic_error("unhandled rejection");
}

Timestamp Skewed(Timestamp t, std::int64_t skew) {
  if (skew >= 0) return {t.seconds + static_cast<std::uint64_t>(skew)};
  const auto back = static_cast<std::uint64_t>(-(skew + 1)) + 1;
  return {t.seconds >= back ? t.seconds - back : 0};
}

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t next = line.find(' ', pos);
    if (next == std::string_view::npos) next = line.size();
    fields.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return fields;
}

bool IsLowerHex(std::string_view s) {
  for (char c : s) {
    if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
  }
  return true;
}

}  // namespace

Salt RandomSalt(Rng& rng) {
  Salt s;
  FillRandom(rng, s.bytes);
  return s;
}

MasterKey RandomMasterKey(Rng& rng) {
  MasterKey x;
  FillRandom(rng, x.bytes);
  return x;
}

std::string_view SessionOutcomeName(SessionOutcome outcome) {
  switch (outcome) {
    case SessionOutcome::kCompleted:
      return "completed";
    case SessionOutcome::kRejectedStale:
      return "rejected-stale";
    case SessionOutcome::kRejectedUnknown:
      return "rejected-unknown";
    case SessionOutcome::kRejectedBadAuthenticator:
      return "rejected-bad-authenticator";
  }
  return "unknown";
}

std::optional<SessionOutcome> ParseSessionOutcome(std::string_view name) {
  for (SessionOutcome o :
       {SessionOutcome::kCompleted, SessionOutcome::kRejectedStale,
        SessionOutcome::kRejectedUnknown,
        SessionOutcome::kRejectedBadAuthenticator}) {
    if (SessionOutcomeName(o) == name) return o;
  }
  return std::nullopt;
}

std::string FormatTranscriptLine(const SessionTranscript& transcript) {
  std::string line = std::to_string(transcript.session_index);
  line += ' ';
  line += SessionOutcomeName(transcript.outcome);
  line += ' ';
  line += HexEncode(transcript.m1.Encode());
  line += ' ';
  line += transcript.m2 ? HexEncode(transcript.m2->Encode()) : "-";
  return line;
}

std::optional<SessionTranscript> ParseTranscriptLine(std::string_view line) {
  const auto fields = SplitSpaces(line);
  if (fields.size() != 4) return std::nullopt;

  SessionTranscript t;
  const auto idx = fields[0];
  if (idx.empty() || (idx.size() > 1 && idx[0] == '0')) return std::nullopt;
  auto [end, ec] =
      std::from_chars(idx.data(), idx.data() + idx.size(), t.session_index);
  if (ec != std::errc() || end != idx.data() + idx.size()) return std::nullopt;

  auto outcome = ParseSessionOutcome(fields[1]);
  if (!outcome) return std::nullopt;
  t.outcome = *outcome;

  if (!IsLowerHex(fields[2])) return std::nullopt;
  auto m1_bytes = HexDecode(fields[2]);
  if (!m1_bytes) return std::nullopt;
  auto m1 = LoginMessage::Decode(*m1_bytes);
  if (!m1) return std::nullopt;
  t.m1 = std::move(*m1);

  if (fields[3] != "-") {
    if (!IsLowerHex(fields[3])) return std::nullopt;
    auto m2_bytes = HexDecode(fields[3]);
    if (!m2_bytes) return std::nullopt;
    auto m2 = ResponseMessage::Decode(*m2_bytes);
    if (!m2 || m2->c2.size() != t.m1.c1.size()) return std::nullopt;
    t.m2 = std::move(*m2);
  }
  // A server reply exists exactly when the server accepted M1.
  const bool server_replied = t.outcome == SessionOutcome::kCompleted ||
                              t.outcome ==
                                  SessionOutcome::kRejectedBadAuthenticator;
  if (server_replied != t.m2.has_value()) {
    // Stale rejections can come from either side; allow both shapes there.
    if (t.outcome != SessionOutcome::kRejectedStale) return std::nullopt;
  }
  return t;
}

SmartCard Enroll(const HashSuite& suite, ServerState& server,
                 const UserIdentity& id, const Password& pw, const Salt& r) {
  // User: RPW = h(r || PW), sent with ID over the secure channel.
  const MaskedPassword rpw = scheme::DeriveRpw(suite, r, pw);
  // Server: refuse known identities, otherwise record N = 1 and issue {L}.
  const ServerRecord& record = server.Add(ServerRecord{id, 1});
  // User: store r alongside L.
  return scheme::ServerIssueCard(suite, server.master_key(), record.id,
                                 record.n, rpw, r);
}

HonestSession RunHonestSession(const HashSuite& suite, const UserDevice& user,
                               const ServerState& server, LogicalClock& clock,
                               std::uint64_t window_seconds,
                               std::uint64_t session_index,
                               std::int64_t user_clock_skew) {
  HonestSession result;
  SessionTranscript& transcript = result.transcript;
  transcript.session_index = session_index;

  const Timestamp t_u = Skewed(clock.now(), user_clock_skew);
  transcript.m1 = scheme::CardLogin(suite, user.card, user.pw, t_u);
  clock.Tick();

  auto matched = scheme::ServerVerifyLogin(suite, server, transcript.m1,
                                           clock.now(), window_seconds);
  if (!matched) {
    transcript.outcome = ToOutcome(matched.rejection());
    return result;
  }
  auto response = scheme::ServerRespond(suite, server.master_key(),
                                        matched.value(), transcript.m1.c1,
                                        clock.now());
  transcript.m2 = response.m2;
  clock.Tick();

  const LongTermSecret j =
      scheme::RecoverLongTermSecret(suite, user.card, user.pw);
  auto user_sk = scheme::UserVerifyResponse(
      suite, j, transcript.m1.c1, response.m2, clock.now(), window_seconds);
  if (!user_sk) {
    transcript.outcome = ToOutcome(user_sk.rejection());
    return result;
  }
  transcript.outcome = SessionOutcome::kCompleted;
  result.user_sk = user_sk.value();
  result.server_sk = std::move(response.sk);
  return result;
}

Verified<ServerRecord> RunReplayedLogin(const HashSuite& suite,
                                        const SessionTranscript& prior,
                                        const ServerState& server,
                                        const LogicalClock& clock,
                                        std::uint64_t window_seconds) {
  if (prior.outcome != SessionOutcome::kCompleted) {
    throw std::invalid_argument("replay requires a completed session");
  }
  return scheme::ServerVerifyLogin(suite, server, prior.m1, clock.now(),
                                   window_seconds);
}

AdversaryView Eavesdrop(std::span<const SessionTranscript> sessions,
                        std::optional<SmartCard> card_dump) {
  return {std::vector<SessionTranscript>(sessions.begin(), sessions.end()),
          std::move(card_dump)};
}

std::vector<SessionTranscript> Scenario::Transcripts() const {
  std::vector<SessionTranscript> out;
  out.reserve(sessions.size());
  for (const auto& s : sessions) out.push_back(s.transcript);
  return out;
}

Scenario RunScenario(const HashSuite& suite, Rng& rng,
                     const ScenarioConfig& config) {
  Scenario scenario{ServerState(RandomMasterKey(rng)), {}, {}};
  scenario.card =
      Enroll(suite, scenario.server, config.id, config.pw, RandomSalt(rng));
  const UserDevice user{scenario.card, config.pw};
  LogicalClock clock(config.start);
  for (std::size_t i = 0; i < config.sessions; ++i) {
    if (i > 0) clock.Advance(config.gap_seconds);
    scenario.sessions.push_back(RunHonestSession(
        suite, user, scenario.server, clock, config.window_seconds, i));
  }
  return scenario;
}

}  // namespace authbreak::sim
