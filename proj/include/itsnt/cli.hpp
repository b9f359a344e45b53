// Copyright 2026 The itsnt Authors
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

#include <iosfwd>
#include <string>
#include <vector>

namespace itsnt {

inline constexpr int kExitNo = 0;
inline constexpr int kExitMaybe = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Command-line entry point. args[0] is the program name.
///   itsnt prove [options] FILE
///   itsnt bench [options] FILE...
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itsnt
