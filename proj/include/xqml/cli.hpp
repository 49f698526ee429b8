// Copyright 2026 The xqml authors
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

#pragma once

#include <string>
#include <vector>

namespace xqml::cli {

// Exit codes reported by the driver.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeError = 1;
inline constexpr int kMissingFile = 2;
inline constexpr int kInvalidConfig = 3;
inline constexpr int kUnknownMethod = 4;
inline constexpr int kUsageError = 5;

/// Entry point behind main(); takes argv-style arguments (without the
/// program name) so it can be driven in-process from tests.
int run(const std::vector<std::string>& args);

}  // namespace xqml::cli
