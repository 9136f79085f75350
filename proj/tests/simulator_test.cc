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

#include <gtest/gtest.h>

#include "test_util.h"

namespace authbreak::sim {
namespace {

using ::authbreak::testing::RandomIdentity;
using ::authbreak::testing::RandomPassword;

class SimulatorTest : public ::testing::Test {
 protected:
  SimulatorTest() : rng_(7), server_(RandomMasterKey(rng_)) {
    card_ = Enroll(suite_, server_, UserIdentity("alice"), pw_,
                   RandomSalt(rng_));
  }

  HashSuite suite_;
  Rng rng_;
  ServerState server_;
  Password pw_{"correct horse"};
  SmartCard card_;
  LogicalClock clock_{Timestamp{1'700'000'000}};
};

TEST_F(SimulatorTest, HonestSessionCompletesWithEqualKeys) {
  const auto s = RunHonestSession(suite_, {card_, pw_}, server_, clock_, 60, 0);
  EXPECT_EQ(s.transcript.outcome, SessionOutcome::kCompleted);
  ASSERT_TRUE(s.user_sk && s.server_sk);
  EXPECT_EQ(*s.user_sk, *s.server_sk);
  ASSERT_TRUE(s.transcript.m2.has_value());
  // One tick per hop.
  EXPECT_EQ(s.transcript.m1.t_u.seconds, 1'700'000'000u);
  EXPECT_EQ(s.transcript.m2->t_s.seconds, 1'700'000'001u);
  EXPECT_EQ(clock_.now().seconds, 1'700'000'002u);
}

TEST_F(SimulatorTest, ForgedCardIsRejectedUnknown) {
  ServerState other(RandomMasterKey(rng_));
  const SmartCard forged =
      Enroll(suite_, other, UserIdentity("mallory"), pw_, RandomSalt(rng_));
  const auto s =
      RunHonestSession(suite_, {forged, pw_}, server_, clock_, 60, 0);
  EXPECT_EQ(s.transcript.outcome, SessionOutcome::kRejectedUnknown);
  EXPECT_FALSE(s.transcript.m2.has_value());
  EXPECT_FALSE(s.user_sk || s.server_sk);
}

TEST_F(SimulatorTest, ZeroWindowMakesOneTickStale) {
  const auto s = RunHonestSession(suite_, {card_, pw_}, server_, clock_, 0, 0);
  EXPECT_EQ(s.transcript.outcome, SessionOutcome::kRejectedStale);
}

TEST_F(SimulatorTest, UserClockSkewMakesLoginStale) {
  const auto s =
      RunHonestSession(suite_, {card_, pw_}, server_, clock_, 60, 0, -3600);
  EXPECT_EQ(s.transcript.outcome, SessionOutcome::kRejectedStale);
  EXPECT_EQ(s.transcript.m1.t_u.seconds, 1'700'000'000u - 3600);
}

TEST_F(SimulatorTest, EnrollRejectsDuplicateIdentity) {
  EXPECT_THROW(Enroll(suite_, server_, UserIdentity("alice"), pw_,
                      RandomSalt(rng_)),
               DuplicateIdentityError);
  EXPECT_EQ(server_.records().size(), 1u);
  EXPECT_EQ(server_.records()[0].n, 1u);
}

TEST_F(SimulatorTest, ReplayInsideWindowIsAccepted) {
  const auto s = RunHonestSession(suite_, {card_, pw_}, server_, clock_, 60, 0);
  clock_.Advance(30);
  EXPECT_TRUE(RunReplayedLogin(suite_, s.transcript, server_, clock_, 60));
}

TEST_F(SimulatorTest, ReplayAfterWindowIsRejected) {
  const auto s = RunHonestSession(suite_, {card_, pw_}, server_, clock_, 60, 0);
  clock_.Advance(61);
  auto r = RunReplayedLogin(suite_, s.transcript, server_, clock_, 60);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.rejection(), Rejection::kStaleTimestamp);
}

TEST_F(SimulatorTest, ReplayAfterRemovalIsRejected) {
  const auto s = RunHonestSession(suite_, {card_, pw_}, server_, clock_, 60, 0);
  ASSERT_TRUE(server_.Remove(UserIdentity("alice")));
  auto r = RunReplayedLogin(suite_, s.transcript, server_, clock_, 60);
  ASSERT_FALSE(r);
  EXPECT_EQ(r.rejection(), Rejection::kUnknownOrigin);
}

TEST_F(SimulatorTest, ReplayOfFailedSessionIsAPreconditionViolation) {
  const auto s = RunHonestSession(suite_, {card_, pw_}, server_, clock_, 0, 0);
  EXPECT_THROW(RunReplayedLogin(suite_, s.transcript, server_, clock_, 60),
               std::invalid_argument);
}

TEST(EavesdropTest, PackagesWhatItIsGiven) {
  EXPECT_TRUE(Eavesdrop({}).transcripts.empty());
  EXPECT_FALSE(Eavesdrop({}).card_dump.has_value());

  HashSuite suite;
  Rng rng(3);
  const auto scenario = RunScenario(suite, rng, ScenarioConfig{});
  const auto transcripts = scenario.Transcripts();
  const auto view = Eavesdrop(transcripts);
  ASSERT_EQ(view.transcripts.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(view.transcripts[i].session_index, i);
  }
  const auto dumped = Eavesdrop(transcripts, scenario.card);
  EXPECT_EQ(dumped.card_dump, scenario.card);
}

TEST(TranscriptLineTest, FormatIsFixed) {
  SessionTranscript t;
  t.session_index = 4;
  t.outcome = SessionOutcome::kRejectedUnknown;
  t.m1 = LoginMessage{Digest(Bytes(32, 0xab)), Timestamp{1}};
  std::string c1_hex;
  for (int i = 0; i < 32; ++i) c1_hex += "ab";
  EXPECT_EQ(FormatTranscriptLine(t),
            "4 rejected-unknown 01" + c1_hex + "0000000000000001 -");
}

TEST(TranscriptLineTest, ParseRejectsDeviations) {
  HashSuite suite;
  Rng rng(4);
  const auto scenario = RunScenario(suite, rng, ScenarioConfig{});
  const std::string line =
      FormatTranscriptLine(scenario.sessions[0].transcript);
  ASSERT_TRUE(ParseTranscriptLine(line).has_value());

  std::string upper = line;
  for (auto& c : upper) c = static_cast<char>(std::toupper(c));
  EXPECT_FALSE(ParseTranscriptLine(upper));
  EXPECT_FALSE(ParseTranscriptLine(line + " "));
  EXPECT_FALSE(ParseTranscriptLine("0" + line));
  EXPECT_FALSE(ParseTranscriptLine(line.substr(0, line.size() - 2)));
  // A completed session must carry M2.
  EXPECT_FALSE(ParseTranscriptLine(line.substr(0, line.rfind(' ')) + " -"));
  EXPECT_FALSE(ParseTranscriptLine("x completed 00 -"));
}

// Serialised transcripts hold none of the secrets that produced them.
TEST(SimulatorPropertyTest, TranscriptsLeakNoSecrets) {
  HashSuite suite;
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    ScenarioConfig config;
    config.id = RandomIdentity(rng);
    config.pw = RandomPassword(rng);
    config.sessions = 2;
    const auto scenario = RunScenario(suite, rng, config);
    const auto j = scheme::DeriveLongTermSecret(
        suite, scenario.server.master_key(), config.id, 1);
    for (const auto& s : scenario.sessions) {
      const std::string line = FormatTranscriptLine(s.transcript);
      Bytes wire = s.transcript.m1.Encode();
      if (s.transcript.m2) {
        const Bytes m2 = s.transcript.m2->Encode();
        wire.insert(wire.end(), m2.begin(), m2.end());
      }
      const auto contains = [&](ByteView secret) {
        return ContainsSubsequence(wire, secret) ||
               line.find(HexEncode(secret)) != std::string::npos;
      };
      ASSERT_FALSE(contains(scenario.server.master_key().bytes));
      ASSERT_FALSE(contains(j.value.bytes()));
      ASSERT_FALSE(contains(scenario.card.l.bytes()));
      ASSERT_FALSE(contains(scenario.card.r.bytes));
      ASSERT_FALSE(contains(config.pw.bytes()));
      ASSERT_FALSE(line.find(config.pw.str()) != std::string::npos);
      ASSERT_TRUE(s.user_sk.has_value());
      ASSERT_FALSE(contains(s.user_sk->value.bytes()));
    }
  }
}

TEST(SimulatorPropertyTest, SameSeedSameTranscripts) {
  HashSuite suite;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng a(seed), b(seed);
    const auto sa = RunScenario(suite, a, ScenarioConfig{});
    const auto sb = RunScenario(suite, b, ScenarioConfig{});
    EXPECT_EQ(sa.Transcripts(), sb.Transcripts());
  }
}

TEST(SimulatorPropertyTest, ClockNeverGoesBackwards) {
  HashSuite suite;
  Rng rng(22);
  ServerState server(RandomMasterKey(rng));
  const Password pw("pw");
  const SmartCard card =
      Enroll(suite, server, UserIdentity("u"), pw, RandomSalt(rng));
  LogicalClock clock(Timestamp{1000});
  Timestamp last = clock.now();
  for (int i = 0; i < 200; ++i) {
    switch (rng() % 4) {
      case 0:
        clock.Tick();
        break;
      case 1:
        clock.Advance(rng() % 100);
        break;
      case 2:
        RunHonestSession(suite, {card, pw}, server, clock, rng() % 3, i,
                         static_cast<std::int64_t>(rng() % 10) - 5);
        break;
      default:
        RunHonestSession(suite, {card, Password("bad")}, server, clock, 60, i);
    }
    ASSERT_GE(clock.now(), last);
    last = clock.now();
  }
}

}  // namespace
}  // namespace authbreak::sim
