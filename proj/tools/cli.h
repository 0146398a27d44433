// Copyright 2026 The TEA Indexer Authors.
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

#ifndef TEA_TOOLS_CLI_H_
#define TEA_TOOLS_CLI_H_

#include <ostream>

namespace tea::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;    // validation or configuration error
inline constexpr int kExitRuntime = 2;  // pipeline or runtime error

// Environment variable naming a default --config file.
inline constexpr const char* kConfigEnv = "TEA_CONFIG";

// Runs one invocation: index, terms, search, eval, stem, thesaurus-check.
int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace tea::cli

#endif  // TEA_TOOLS_CLI_H_
