// Copyright 2026 The qmz Authors
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

#ifndef QMZ_TOOLS_CLI_H_
#define QMZ_TOOLS_CLI_H_

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace qmz::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,      // bad flags, bad config, out-of-domain parameters
  kExitNumerical = 3,  // quadrature or likelihood failures
  kExitIo = 4,
};

// Runs one command line (without the program name). Payloads go to `out`
// unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses a flat "key = value" document. Blank lines and lines starting with
// '#' are skipped, except that a file whose first line is the "# qmz" banner
// of a previous run is read back from its "# key = value" echo. Keys are
// returned with '-' folded to '_'.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

}  // namespace qmz::cli

#endif  // QMZ_TOOLS_CLI_H_
