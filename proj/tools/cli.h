// Copyright 2026 The oppshape Authors.
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

#ifndef OPPSHAPE_TOOLS_CLI_H_
#define OPPSHAPE_TOOLS_CLI_H_

#include <iosfwd>
#include <string>

namespace oppshape::cli {

inline constexpr char kVersion[] = "0.1.0";

// Shortest text with 9 significant digits, independent of the locale.
std::string FormatNumber(double value);

// Runs the command line and returns the process exit code: 0 on success, 1 for
// errors found while computing or writing, 2 for invalid arguments or
// configuration. Diagnostics go to `err`.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace oppshape::cli

#endif  // OPPSHAPE_TOOLS_CLI_H_
