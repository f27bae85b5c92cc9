//
// Copyright 2026 The mogame Authors
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
//

#ifndef MOGAME_TOOLS_SELFTEST_H_
#define MOGAME_TOOLS_SELFTEST_H_

#include <string>
#include <vector>

namespace mogame::cli {

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Invariant checks on small built-in instances.
std::vector<SelftestCheck> RunSelftest();

}  // namespace mogame::cli

#endif  // MOGAME_TOOLS_SELFTEST_H_
