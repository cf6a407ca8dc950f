// Copyright 2026 The fivew1h Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point. Subcommands: validate, stats, split, export-sft,
// run, parse, score, report, transfer.
//
// Exit status: 0 success, 1 validation failure, 2 usage error (including an
// output directory produced by a different configuration), 3 I/O, data or
// endpoint failure.

#ifndef FIVEW1H_CLI_H_
#define FIVEW1H_CLI_H_

#include <string>
#include <vector>

namespace fivew1h {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;

int RunCli(int argc, char** argv);
// args[0] is the program name.
int RunCli(const std::vector<std::string>& args);

std::string ToolVersion();

}  // namespace fivew1h

#endif  // FIVEW1H_CLI_H_
