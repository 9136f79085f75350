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

#ifndef AUTHBREAK_CLI_H_
#define AUTHBREAK_CLI_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "authbreak/hash_suite.h"

namespace authbreak::cli {

// Stable process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitExhausted = 1,  // attack found nothing, or no usable data
  kExitDuplicateIdentity = 2,
  kExitIo = 3,
  kExitRejected = 4,
  kExitStale = 5,
};

enum class OutputMode { kHuman, kMachineLines };

struct CliConfig {
  std::string registry_path = "registry.txt";
  std::uint64_t window_seconds = 60;  // >= 1
  std::uint64_t seed = 0;
  HashAlgorithm hash = HashAlgorithm::kSha256;
  OutputMode output_mode = OutputMode::kHuman;
  unsigned jobs = 1;
};

// Entry point behind the `authbreak` binary. `args` excludes the program
// name. Passwords not given by flag are read as one line from `in`.
int RunCli(const std::vector<std::string>& args, std::istream& in,
           std::ostream& out, std::ostream& err);

}  // namespace authbreak::cli

#endif  // AUTHBREAK_CLI_H_
