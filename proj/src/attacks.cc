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

#include "authbreak/attacks.h"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "authbreak/scheme.h"

namespace authbreak::attacks {

namespace {

constexpr std::size_t kNoMatch = std::numeric_limits<std::size_t>::max();

const sim::SessionTranscript* FirstCompleted(const sim::AdversaryView& view) {
  for (const auto& t : view.transcripts) {
    if (t.outcome == sim::SessionOutcome::kCompleted) return &t;
  }
  return nullptr;
}

// Lowest matching index in [begin, end), or kNoMatch. Gives up as soon as
// another worker has already found something earlier.
void ScanRange(const HashSuite& suite, const SmartCard& card,
               const LoginMessage& m1, std::span<const std::string> candidates,
               std::size_t begin, std::size_t end,
               std::atomic<std::size_t>& best) {
  for (std::size_t i = begin; i < end; ++i) {
    if (i >= best.load(std::memory_order_relaxed)) return;
    if (CandidateMatches(suite, card, m1, candidates[i])) {
      std::size_t current = best.load();
      while (i < current && !best.compare_exchange_weak(current, i)) {
      }
      return;
    }
  }
}

}  // namespace

bool CandidateMatches(const HashSuite& suite, const SmartCard& card_dump,
                      const LoginMessage& m1, std::string_view candidate) {
  if (candidate.empty() || candidate.size() > Password::kMaxLength) {
    return false;
  }
  // RPW* = h(r || PW*), J* = L ^ RPW*, then C1 =? h1(J* || T_U).
  const Digest rpw = suite.H({card_dump.r.bytes, AsBytes(candidate)});
  const LongTermSecret j_star{card_dump.l ^ rpw};
  return scheme::ComputeC1(suite, j_star, m1.t_u) == m1.c1;
}

GuessingResult OfflineGuess(const HashSuite& suite,
                            const sim::AdversaryView& view,
                            std::span<const std::string> candidates,
                            unsigned jobs) {
  if (!view.card_dump) {
    throw PreconditionError("offline guessing needs the card contents {L, r}");
  }
  const sim::SessionTranscript* target = FirstCompleted(view);
  if (target == nullptr) {
    throw PreconditionError("offline guessing needs a completed transcript");
  }

  const auto start = std::chrono::steady_clock::now();
  std::atomic<std::size_t> best{kNoMatch};
  const std::size_t n = candidates.size();
  jobs = std::max(1u, jobs);

  if (jobs == 1 || n < 2 * jobs) {
    ScanRange(suite, *view.card_dump, target->m1, candidates, 0, n, best);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + jobs - 1) / jobs;
    for (std::size_t begin = 0; begin < n; begin += chunk) {
      const std::size_t end = std::min(n, begin + chunk);
      workers.emplace_back([&, begin, end] {
        ScanRange(suite, *view.card_dump, target->m1, candidates, begin, end,
                  best);
      });
    }
  }

  GuessingResult result;
  const std::size_t found = best.load();
  if (found != kNoMatch) {
    result.recovered = Password(candidates[found]);
    result.index = found;
    result.guesses_tried = found + 1;
  } else {
    result.guesses_tried = n;
  }
  result.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

LongTermSecret DeriveJFromCard(const HashSuite& suite, const SmartCard& card,
                               const Password& pw) {
  return scheme::RecoverLongTermSecret(suite, card, pw);
}

ForwardSecrecyBreak BreakForwardSecrecy(const HashSuite& suite,
                                        const LongTermSecret& j,
                                        const sim::AdversaryView& view) {
  ForwardSecrecyBreak out;
  for (const auto& t : view.transcripts) {
    if (!t.m2) {
      ++out.skipped;
      continue;
    }
    out.keys.push_back(
        {t.session_index, scheme::DeriveSessionKey(suite, j, t.m2->c2)});
  }
  return out;
}

std::vector<std::string> ReadWordList(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) words.push_back(std::move(line));
  }
  return words;
}

}  // namespace authbreak::attacks
