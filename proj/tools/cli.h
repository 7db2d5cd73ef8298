// Copyright 2026 The mdist Authors
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

#ifndef MDIST_TOOLS_CLI_H_
#define MDIST_TOOLS_CLI_H_

namespace mdist::cli {

// Exit codes: 0 success, 1 input or validation error, 2 insufficient data.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInsufficientData = 2;

int Run(int argc, char** argv);

}  // namespace mdist::cli

#endif  // MDIST_TOOLS_CLI_H_
