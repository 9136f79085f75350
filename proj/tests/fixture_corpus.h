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

#ifndef AUTHBREAK_TESTS_FIXTURE_CORPUS_H_
#define AUTHBREAK_TESTS_FIXTURE_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace authbreak::testing {

// One entry of tests/fixtures/malformed/MANIFEST.
struct MalformedFixture {
  std::filesystem::path path;
  std::string format;    // "registry" or "card"
  std::string expected;  // StoreErrorKindName of the expected error
  std::size_t line = 0;
};

inline std::vector<MalformedFixture> LoadMalformedCorpus() {
  const std::filesystem::path dir = AUTHBREAK_FIXTURE_DIR "/malformed";
  std::ifstream manifest(dir / "MANIFEST");
  if (!manifest) throw std::runtime_error("missing fixture MANIFEST");
  std::vector<MalformedFixture> out;
  std::string line;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    MalformedFixture f;
    std::string name;
    fields >> name >> f.format >> f.expected >> f.line;
    f.path = dir / name;
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace authbreak::testing

#endif  // AUTHBREAK_TESTS_FIXTURE_CORPUS_H_
