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

#include "authbreak/cli.h"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string_view>

#include "CLI11.hpp"
#include "authbreak/attacks.h"
#include "authbreak/scheme.h"
#include "authbreak/simulator.h"
#include "authbreak/store.h"

namespace authbreak::cli {

namespace {

namespace fs = std::filesystem;

// Human mode prints "label: value" and narration; machine mode prints only
// "key=value" lines.
class Printer {
 public:
  Printer(OutputMode mode, std::ostream& out) : mode_(mode), out_(out) {}

  void Field(std::string_view key, std::string_view label,
             std::string_view value) {
    if (mode_ == OutputMode::kHuman) {
      out_ << label << ": " << value << '\n';
    } else {
      out_ << key << '=' << value << '\n';
    }
  }
  void Say(std::string_view text) {
    if (mode_ == OutputMode::kHuman) out_ << text << '\n';
  }

 private:
  OutputMode mode_;
  std::ostream& out_;
};

struct ExitError {
  int code;
  std::string message;
};

std::seed_seq SeedFor(std::uint64_t seed, std::string_view purpose) {
  std::vector<std::uint32_t> material{static_cast<std::uint32_t>(seed),
                                      static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : purpose) material.push_back(c);
  return std::seed_seq(material.begin(), material.end());
}

sim::Rng RngFor(std::uint64_t seed, std::string_view purpose) {
  auto seq = SeedFor(seed, purpose);
  return sim::Rng(seq);
}

Password ObtainPassword(const std::optional<std::string>& flag,
                        std::istream& in, std::ostream& err) {
  if (flag) return Password(*flag);
  err << "password: " << std::flush;
  std::string line;
  if (!std::getline(in, line)) {
    throw ExitError{kExitIo, "no password on standard input"};
  }
  return Password(line);
}

template <typename Fn>
auto WithStore(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const store::StoreError& e) {
    throw ExitError{kExitIo, e.what()};
  }
}

fs::path KeysPathFor(const fs::path& log) {
  fs::path p = log;
  p += ".keys";
  return p;
}

void AppendLine(const fs::path& path, const std::string& line) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  out << line << '\n';
  out.flush();
  if (!out) throw ExitError{kExitIo, "cannot append to " + path.string()};
}

std::vector<sim::SessionTranscript> LoadTranscriptLog(const fs::path& path) {
  const std::string text = WithStore([&] { return store::ReadFile(path); });
  std::vector<sim::SessionTranscript> out;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    if (line.empty()) continue;
    auto t = sim::ParseTranscriptLine(line);
    if (!t) {
      throw ExitError{kExitIo, path.string() + ":" + std::to_string(lineno) +
                                   ": malformed transcript line"};
    }
    out.push_back(std::move(*t));
  }
  return out;
}

// "<session-index> <sk hex>" per line, written next to the transcript log.
std::map<std::uint64_t, std::string> LoadRecordedKeys(const fs::path& path) {
  std::map<std::uint64_t, std::string> keys;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto sp = line.find(' ');
    if (sp == std::string::npos) continue;
    try {
      keys[std::stoull(line.substr(0, sp))] = line.substr(sp + 1);
    } catch (const std::exception&) {
      throw ExitError{kExitIo, "malformed key record in " + path.string()};
    }
  }
  return keys;
}

std::uint64_t CountNonEmptyLines(const fs::path& path) {
  std::ifstream in(path);
  std::uint64_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) ++n;
  }
  return n;
}

std::uint64_t WallClockSeconds() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
}

// ---------------------------------------------------------------------------

struct RegisterArgs {
  std::string id;
  std::optional<std::string> pw;
  std::string card_out;
};

int CmdRegister(const CliConfig& config, const RegisterArgs& args,
                std::istream& in, std::ostream& out, std::ostream& err) {
  const HashSuite suite(config.hash);
  const UserIdentity id(args.id);
  const Password pw = ObtainPassword(args.pw, in, err);
  const fs::path registry_path = config.registry_path;

  ServerState state = WithStore([&] {
    if (fs::exists(registry_path)) return store::LoadRegistry(registry_path);
    auto rng = RngFor(config.seed, "master-key");
    return ServerState(sim::RandomMasterKey(rng));
  });

  auto rng = RngFor(config.seed, "salt:" + id.str());
  SmartCard card;
  try {
    card = sim::Enroll(suite, state, id, pw, sim::RandomSalt(rng));
  } catch (const DuplicateIdentityError&) {
    throw ExitError{kExitDuplicateIdentity,
                    "identity '" + id.str() +
                        "' is already registered; choose a new identity"};
  }
  // Card first: a failed card write must leave the registry untouched.
  WithStore([&] {
    store::SaveCard(card, args.card_out);
    store::SaveRegistry(state, registry_path);
    return 0;
  });

  Printer p(config.output_mode, out);
  p.Field("identity", "registered", id.str());
  p.Field("n", "registration count", "1");
  p.Field("card", "card written to", args.card_out);
  return kExitOk;
}

struct SessionArgs {
  std::string card;
  std::optional<std::string> pw;
  std::string log = "transcripts.log";
  std::int64_t skew = 0;
  std::optional<std::uint64_t> now;
};

int CmdSession(const CliConfig& config, const SessionArgs& args,
               std::istream& in, std::ostream& out, std::ostream& err) {
  const HashSuite suite(config.hash);
  const ServerState state =
      WithStore([&] { return store::LoadRegistry(config.registry_path); });
  const SmartCard card = WithStore([&] { return store::LoadCard(args.card); });
  const Password pw = ObtainPassword(args.pw, in, err);

  sim::LogicalClock clock(Timestamp{args.now.value_or(WallClockSeconds())});
  const std::uint64_t index = CountNonEmptyLines(args.log);
  const auto session =
      sim::RunHonestSession(suite, sim::UserDevice{card, pw}, state, clock,
                            config.window_seconds, index, args.skew);
  const auto& t = session.transcript;

  AppendLine(args.log, sim::FormatTranscriptLine(t));
  if (session.user_sk) {
    AppendLine(KeysPathFor(args.log),
               std::to_string(index) + " " + session.user_sk->value.Hex());
  }

  Printer p(config.output_mode, out);
  p.Field("session", "session", std::to_string(index));
  p.Field("outcome", "outcome", sim::SessionOutcomeName(t.outcome));
  switch (t.outcome) {
    case sim::SessionOutcome::kCompleted: {
      p.Field("user_sk", "user sk", session.user_sk->value.Hex());
      p.Field("server_sk", "server sk", session.server_sk->value.Hex());
      const bool match = *session.user_sk == *session.server_sk;
      p.Field("keys_match", "keys match", match ? "true" : "false");
      return match ? kExitOk : kExitRejected;
    }
    case sim::SessionOutcome::kRejectedStale:
      return kExitStale;
    case sim::SessionOutcome::kRejectedUnknown:
    case sim::SessionOutcome::kRejectedBadAuthenticator:
      return kExitRejected;
  }
  return kExitRejected;
}

struct GuessArgs {
  std::string log = "transcripts.log";
  std::string card;
  std::string wordlist;
};

int CmdAttackGuess(const CliConfig& config, const GuessArgs& args,
                   std::ostream& out) {
  const HashSuite suite(config.hash);
  const auto transcripts = LoadTranscriptLog(args.log);
  const SmartCard card = WithStore([&] { return store::LoadCard(args.card); });
  std::ifstream wl(args.wordlist, std::ios::binary);
  if (!wl) throw ExitError{kExitIo, "cannot read " + args.wordlist};
  const auto words = attacks::ReadWordList(wl);

  const auto view = sim::Eavesdrop(transcripts, card);
  attacks::GuessingResult result;
  try {
    result = attacks::OfflineGuess(suite, view, words, config.jobs);
  } catch (const attacks::PreconditionError& e) {
    throw ExitError{kExitExhausted, e.what()};
  }

  Printer p(config.output_mode, out);
  p.Field("recovered", "recovered password",
          result.recovered ? result.recovered->str() : "(none)");
  p.Field("guesses_tried", "guesses tried",
          std::to_string(result.guesses_tried));
  p.Field("elapsed_ms", "elapsed ms", std::to_string(result.elapsed.count()));
  return result.recovered ? kExitOk : kExitExhausted;
}

struct FsArgs {
  std::string log = "transcripts.log";
  std::string card;
  std::optional<std::string> pw;
};

int CmdAttackFs(const CliConfig& config, const FsArgs& args, std::istream& in,
                std::ostream& out, std::ostream& err) {
  const HashSuite suite(config.hash);
  const auto transcripts = LoadTranscriptLog(args.log);
  const SmartCard card = WithStore([&] { return store::LoadCard(args.card); });
  const Password pw = ObtainPassword(args.pw, in, err);

  const auto view = sim::Eavesdrop(transcripts);
  const bool any_completed = std::any_of(
      transcripts.begin(), transcripts.end(), [](const auto& t) {
        return t.outcome == sim::SessionOutcome::kCompleted;
      });
  if (!any_completed) {
    throw ExitError{kExitExhausted, "no completed sessions in " + args.log};
  }

  const LongTermSecret j = attacks::DeriveJFromCard(suite, card, pw);
  const auto broken = attacks::BreakForwardSecrecy(suite, j, view);
  const auto keys_path = KeysPathFor(args.log);
  const bool have_recorded = fs::exists(keys_path);
  const auto recorded =
      have_recorded ? LoadRecordedKeys(keys_path)
                    : std::map<std::uint64_t, std::string>{};

  Printer p(config.output_mode, out);
  std::size_t matched = 0;
  std::size_t checked = 0;
  for (const auto& key : broken.keys) {
    const std::string idx = std::to_string(key.session_index);
    p.Field("session_" + idx + "_sk", "session " + idx + " sk",
            key.sk.value.Hex());
    auto it = recorded.find(key.session_index);
    if (it == recorded.end()) continue;
    ++checked;
    const bool ok = it->second == key.sk.value.Hex();
    if (ok) ++matched;
    p.Field("session_" + idx + "_match", "session " + idx + " matches record",
            ok ? "true" : "false");
  }
  p.Field("recovered", "keys recovered", std::to_string(broken.keys.size()));
  p.Field("skipped", "transcripts skipped", std::to_string(broken.skipped));
  p.Field("verified", "verified against record",
          std::to_string(matched) + "/" + std::to_string(checked));
  if (!have_recorded) p.Say("no recorded keys found; recovery unverified");
  return matched == checked ? kExitOk : kExitExhausted;
}

// ---------------------------------------------------------------------------

std::string RandomWord(sim::Rng& rng) {
  static constexpr std::string_view kAlphabet =
      "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string w;
  const std::size_t len = 6 + rng() % 5;
  for (std::size_t i = 0; i < len; ++i) w += kAlphabet[rng() % kAlphabet.size()];
  return w;
}

int CmdDemo(const CliConfig& config, std::ostream& out) {
  constexpr std::size_t kWordListSize = 5000;
  constexpr std::size_t kSessions = 3;

  const HashSuite suite(config.hash);
  auto rng = RngFor(config.seed, "demo");
  Printer p(config.output_mode, out);

  std::vector<std::string> words;
  words.reserve(kWordListSize);
  for (std::size_t i = 0; i < kWordListSize; ++i) words.push_back(RandomWord(rng));
  const std::size_t planted = rng() % kWordListSize;
  const std::string identity = "user-" + RandomWord(rng);

  p.Say("== authbreak demo ==");
  p.Field("seed", "seed", std::to_string(config.seed));
  p.Field("hash", "hash", HashAlgorithmName(config.hash));
  p.Field("identity", "identity", identity);
  p.Field("password_index", "password planted at word-list index",
          std::to_string(planted));

  sim::ScenarioConfig scenario_config{UserIdentity(identity),
                                      Password(words[planted]), kSessions};
  scenario_config.window_seconds = config.window_seconds;
  const auto scenario = sim::RunScenario(suite, rng, scenario_config);
  p.Say("-- registration: server issued card {L, r}; user kept the password");
  p.Field("card_l", "card L", scenario.card.l.Hex());
  p.Field("card_r", "card r", HexEncode(scenario.card.r.bytes));

  p.Say("-- honest sessions on the public channel");
  for (const auto& s : scenario.sessions) {
    const std::string idx = std::to_string(s.transcript.session_index);
    p.Field("session_" + idx + "_outcome", "session " + idx + " outcome",
            sim::SessionOutcomeName(s.transcript.outcome));
    p.Field("session_" + idx + "_transcript", "session " + idx + " transcript",
            sim::FormatTranscriptLine(s.transcript));
    if (s.user_sk) {
      p.Field("session_" + idx + "_sk", "session " + idx + " honest sk",
              s.user_sk->value.Hex());
    }
  }

  p.Say("-- adversary: eavesdrops every transcript and extracts the card");
  const auto transcripts = scenario.Transcripts();
  const auto view = sim::Eavesdrop(transcripts, scenario.card);
  p.Field("captured", "transcripts captured",
          std::to_string(view.transcripts.size()));

  p.Say("-- offline password guessing against C1 of the first session");
  const auto guess = attacks::OfflineGuess(suite, view, words, config.jobs);
  p.Field("wordlist_size", "word-list size", std::to_string(words.size()));
  p.Field("guesses_tried", "guesses tried", std::to_string(guess.guesses_tried));
  if (!guess.recovered) {
    p.Field("result", "result", "password-not-recovered");
    return kExitExhausted;
  }
  p.Field("recovered_password", "recovered password", guess.recovered->str());
  p.Field("password_matches_planted", "equals planted password",
          guess.recovered->str() == words[planted] ? "true" : "false");

  p.Say("-- forward secrecy: J = L ^ h(r || PW), then sk = h1(J || C2)");
  const LongTermSecret j =
      attacks::DeriveJFromCard(suite, scenario.card, *guess.recovered);
  const auto broken = attacks::BreakForwardSecrecy(suite, j, view);
  std::size_t recovered = 0;
  for (const auto& key : broken.keys) {
    const auto& honest = scenario.sessions.at(key.session_index).user_sk;
    const bool ok = honest && *honest == key.sk;
    if (ok) ++recovered;
    const std::string idx = std::to_string(key.session_index);
    p.Field("session_" + idx + "_recovered_sk", "session " + idx + " recovered sk",
            key.sk.value.Hex());
    p.Field("session_" + idx + "_match", "session " + idx + " matches honest sk",
            ok ? "true" : "false");
  }
  p.Field("recovered_keys",
          "session keys recovered", std::to_string(recovered) + "/" +
                                        std::to_string(scenario.sessions.size()));
  const bool all = recovered == scenario.sessions.size();
  p.Field("result", "result",
          all ? "all-session-keys-recovered" : "some-session-keys-missed");
  return all ? kExitOk : kExitExhausted;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err) {
  CLI::App app{"authbreak: smart-card authentication scheme cryptanalysis"};
  app.fallthrough();
  app.require_subcommand(1);

  CliConfig config;
  std::string hash_name = "sha256";
  std::string output_mode = "human";
  app.add_option("--registry", config.registry_path, "server registry file")
      ->capture_default_str();
  app.add_option("--window", config.window_seconds,
                 "timestamp acceptance window, seconds")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "pseudo-random seed")
      ->capture_default_str();
  app.add_option("--hash", hash_name, "sha256 | sha3-256")
      ->check(CLI::IsMember({"sha256", "sha3-256"}))
      ->capture_default_str();
  app.add_option("--output-mode", output_mode, "human | machine-lines")
      ->check(CLI::IsMember({"human", "machine-lines"}))
      ->capture_default_str();
  app.add_option("--jobs", config.jobs, "parallel guessing workers")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  RegisterArgs reg;
  auto* cmd_register = app.add_subcommand("register", "enroll a new user");
  cmd_register->add_option("--id", reg.id, "user identity")->required();
  cmd_register->add_option("--pw", reg.pw,
                           "password (read from stdin when omitted)");
  cmd_register->add_option("--card-out", reg.card_out, "card file to write")
      ->required();

  SessionArgs ses;
  auto* cmd_session = app.add_subcommand("session", "run one honest session");
  cmd_session->add_option("--card", ses.card, "card file")->required();
  cmd_session->add_option("--pw", ses.pw, "password (stdin when omitted)");
  cmd_session->add_option("--log", ses.log, "transcript log to append to")
      ->capture_default_str();
  cmd_session->add_option("--skew", ses.skew,
                          "offset of the user's clock, seconds");
  cmd_session->add_option("--now", ses.now,
                          "server clock start (default: wall clock)");

  auto* cmd_attack = app.add_subcommand("attack", "run an attack");
  cmd_attack->require_subcommand(1);

  GuessArgs gue;
  auto* cmd_guess =
      cmd_attack->add_subcommand("guess", "offline password guessing");
  cmd_guess->add_option("--log", gue.log, "transcript log")
      ->capture_default_str();
  cmd_guess->add_option("--card", gue.card, "extracted card file")->required();
  cmd_guess->add_option("--wordlist", gue.wordlist, "candidate passwords")
      ->required();

  FsArgs fsa;
  auto* cmd_fs =
      cmd_attack->add_subcommand("fs", "recover past session keys from J");
  cmd_fs->add_option("--log", fsa.log, "transcript log")->capture_default_str();
  cmd_fs->add_option("--card", fsa.card, "extracted card file")->required();
  cmd_fs->add_option("--pw", fsa.pw,
                     "known or recovered password (stdin when omitted)");

  auto* cmd_demo = app.add_subcommand("demo", "scripted end-to-end break");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  config.hash = *ParseHashAlgorithm(hash_name);
  config.output_mode = output_mode == "machine-lines" ? OutputMode::kMachineLines
                                                      : OutputMode::kHuman;

  try {
    if (*cmd_register) return CmdRegister(config, reg, in, out, err);
    if (*cmd_session) return CmdSession(config, ses, in, out, err);
    if (*cmd_guess) return CmdAttackGuess(config, gue, out);
    if (*cmd_fs) return CmdAttackFs(config, fsa, in, out, err);
    if (*cmd_demo) return CmdDemo(config, out);
  } catch (const ExitError& e) {
    err << "authbreak: " << e.message << '\n';
    return e.code;
  } catch (const std::invalid_argument& e) {
    err << "authbreak: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace authbreak::cli
