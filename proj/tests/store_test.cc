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

#include "authbreak/store.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <functional>

#include "fixture_corpus.h"
#include "test_util.h"

namespace authbreak::store {
namespace {

namespace fs = std::filesystem;
using ::authbreak::testing::RandomUtf8Identity;
using ::authbreak::testing::Rng;

class StoreFileTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("authbreak_store_" + std::to_string(::testing::UnitTest::GetInstance()
                                                     ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

MasterKey SampleKey() {
  MasterKey x;
  for (std::size_t i = 0; i < x.bytes.size(); ++i) {
    x.bytes[i] = static_cast<std::uint8_t>(0xA0 + i);
  }
  return x;
}

StoreErrorKind KindOf(const std::function<void()>& fn, std::size_t* line) {
  try {
    fn();
  } catch (const StoreError& e) {
    if (line) *line = e.line();
    return e.kind();
  }
  ADD_FAILURE() << "expected a StoreError";
  return StoreErrorKind::kIo;
}

TEST(RegistryFormatTest, EmptyRegistryIsHeaderOnly) {
  EXPECT_EQ(FormatRegistry(ServerState(SampleKey())),
            "authbreak-registry v1 "
            "a0a1a2a3a4a5a6a7a8a9aaabacadaeafb0b1b2b3b4b5b6b7b8b9babbbcbdbebf\n");
}

TEST(RegistryFormatTest, OneLinePerRecord) {
  ServerState state(SampleKey());
  state.Add({UserIdentity("alice"), 1});
  state.Add({UserIdentity("bob smith"), 7});
  const std::string text = FormatRegistry(state);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
  EXPECT_NE(text.find("\n1 alice\n7 bob smith\n"), std::string::npos);
  EXPECT_EQ(ParseRegistry(text), state);
}

TEST(RegistryFormatTest, DuplicateIdentityIsTyped) {
  std::size_t line = 0;
  const std::string text = FormatRegistry(ServerState(SampleKey())) +
                           "1 alice\n1 alice\n";
  EXPECT_EQ(KindOf([&] { ParseRegistry(text); }, &line),
            StoreErrorKind::kDuplicateIdentity);
  EXPECT_EQ(line, 3u);
}

TEST(RegistryFormatTest, TruncatedMasterKeyIsLineOne) {
  std::string text = FormatRegistry(ServerState(SampleKey()));
  text.erase(text.size() - 3, 2);
  std::size_t line = 0;
  EXPECT_EQ(KindOf([&] { ParseRegistry(text); }, &line),
            StoreErrorKind::kMalformedLine);
  EXPECT_EQ(line, 1u);
}

TEST(RegistryFormatTest, UppercaseKeyIsAcceptedAndNormalised) {
  std::string text = FormatRegistry(ServerState(SampleKey()));
  std::transform(text.begin() + 22, text.end(), text.begin() + 22, ::toupper);
  EXPECT_EQ(FormatRegistry(ParseRegistry(text)),
            FormatRegistry(ServerState(SampleKey())));
}

TEST(RegistryFormatTest, MissingFinalNewlineIsTolerated) {
  ServerState state(SampleKey());
  state.Add({UserIdentity("alice"), 2});
  std::string text = FormatRegistry(state);
  text.pop_back();
  EXPECT_EQ(ParseRegistry(text), state);
}

TEST(RegistryFormatTest, UnwritableIdentityIsRefused) {
  ServerState state(SampleKey());
  state.Add({UserIdentity("two\nlines"), 1});
  EXPECT_THROW(FormatRegistry(state), std::invalid_argument);
  ServerState bad_utf8(SampleKey());
  bad_utf8.Add({UserIdentity("\xc3\x28"), 1});
  EXPECT_THROW(FormatRegistry(bad_utf8), std::invalid_argument);
}

TEST(CardFormatTest, RoundTripsAndNormalisesHex) {
  Rng rng(41);
  SmartCard card{testing::RandomDigest(rng), sim::RandomSalt(rng)};
  const std::string text = FormatCard(card);
  EXPECT_EQ(ParseCard(text), card);
  std::string upper = text;
  std::transform(upper.begin() + 18, upper.end(), upper.begin() + 18,
                 [](char c) { return c == 'L' || c == 'r' ? c : ::toupper(c); });
  ASSERT_NE(upper, text);
  EXPECT_EQ(FormatCard(ParseCard(upper)), text);
}

TEST(CardFormatTest, ShortSaltIsMalformedLineThree) {
  Rng rng(42);
  std::string text = FormatCard({testing::RandomDigest(rng), sim::RandomSalt(rng)});
  text.erase(text.size() - 3, 2);
  std::size_t line = 0;
  EXPECT_EQ(KindOf([&] { ParseCard(text); }, &line),
            StoreErrorKind::kMalformedLine);
  EXPECT_EQ(line, 3u);
}

TEST(CardFormatTest, OnlyFullWidthDigestsAreWritable) {
  EXPECT_THROW(FormatCard({Digest::Zero(2), Salt{}}), std::invalid_argument);
}

TEST_F(StoreFileTest, SaveThenLoad) {
  ServerState state(SampleKey());
  state.Add({UserIdentity("alice"), 1});
  state.Add({UserIdentity("\xc3\xa9lodie"), 3});
  SaveRegistry(state, dir_ / "reg.txt");
  EXPECT_EQ(LoadRegistry(dir_ / "reg.txt"), state);

  Rng rng(43);
  const SmartCard card{testing::RandomDigest(rng), sim::RandomSalt(rng)};
  SaveCard(card, dir_ / "card.txt");
  EXPECT_EQ(LoadCard(dir_ / "card.txt"), card);
}

TEST_F(StoreFileTest, OverwriteLeavesNoTemporaries) {
  ServerState state(SampleKey());
  SaveRegistry(state, dir_ / "reg.txt");
  state.Add({UserIdentity("alice"), 1});
  SaveRegistry(state, dir_ / "reg.txt");
  EXPECT_EQ(LoadRegistry(dir_ / "reg.txt"), state);
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator{}),
            1);
}

TEST_F(StoreFileTest, IoFailuresNameThePath) {
  const fs::path missing = dir_ / "no" / "such" / "reg.txt";
  try {
    SaveRegistry(ServerState(SampleKey()), missing);
    FAIL() << "expected StoreError";
  } catch (const StoreError& e) {
    EXPECT_EQ(e.kind(), StoreErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find(missing.string()), std::string::npos);
  }
  EXPECT_EQ(KindOf([&] { LoadCard(dir_ / "absent.txt"); }, nullptr),
            StoreErrorKind::kIo);
}

TEST(MalformedCorpusTest, EveryFixtureYieldsItsTypedError) {
  const auto corpus = testing::LoadMalformedCorpus();
  ASSERT_GE(corpus.size(), 10u);
  for (const auto& f : corpus) {
    SCOPED_TRACE(f.path.filename().string());
    std::size_t line = 0;
    const StoreErrorKind kind =
        f.format == "card" ? KindOf([&] { LoadCard(f.path); }, &line)
                           : KindOf([&] { LoadRegistry(f.path); }, &line);
    EXPECT_EQ(StoreErrorKindName(kind), f.expected);
    EXPECT_EQ(line, f.line);
  }
}

TEST(StorePropertyTest, RandomValuesRoundTrip) {
  Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    ServerState state(sim::RandomMasterKey(rng));
    const std::size_t n = rng() % 8;
    while (state.records().size() < n) {
      auto id = RandomUtf8Identity(rng);
      if (!state.Contains(id)) {
        state.Add({std::move(id), static_cast<std::uint32_t>(1 + rng() % 1000)});
      }
    }
    ASSERT_EQ(ParseRegistry(FormatRegistry(state)), state);
    const SmartCard card{testing::RandomDigest(rng), sim::RandomSalt(rng)};
    ASSERT_EQ(ParseCard(FormatCard(card)), card);
  }
}

TEST(Utf8Test, Validation) {
  EXPECT_TRUE(IsValidUtf8("plain"));
  EXPECT_TRUE(IsValidUtf8("\xe2\x82\xac"));      // euro sign
  EXPECT_FALSE(IsValidUtf8("\xc0\xaf"));         // overlong '/'
  EXPECT_FALSE(IsValidUtf8("\xed\xa0\x80"));     // surrogate
  EXPECT_FALSE(IsValidUtf8("\xe2\x82"));         // truncated
}

}  // namespace
}  // namespace authbreak::store
