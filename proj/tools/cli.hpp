/* Copyright 2026 The Trizone Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TRIZONE_TOOLS_CLI_HPP_
#define TRIZONE_TOOLS_CLI_HPP_

#include <atomic>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace trizone::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;    // failure ratio exceeded, violations found
inline constexpr int kExitUsage = 2;         // bad arguments
inline constexpr int kExitData = 3;          // unreadable or malformed input, I/O
inline constexpr int kExitPrecondition = 4;  // stage gating, invalid configuration
inline constexpr int kExitInterrupted = 130;

// Runs the command line. `cancel` is polled by long-running subcommands.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel = nullptr);

struct Options;

// The parser and the option storage it writes into.
struct Parser {
  Parser();
  ~Parser();
  std::unique_ptr<Options> options;
  std::unique_ptr<CLI::App> app;
};

}  // namespace trizone::cli

#endif  // TRIZONE_TOOLS_CLI_HPP_
