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

#ifndef MOGAME_BASE_H_
#define MOGAME_BASE_H_

#include <cstdint>
#include <random>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace mogame {

// Seeded generator used by every sampling path. Single owner, passed
// explicitly.
using Rng = std::mt19937_64;

namespace internal {

[[noreturn]] void CheckFailed(std::string_view file, int line,
                              std::string_view condition,
                              std::string_view message);

}  // namespace internal
}  // namespace mogame

// Aborts on a violated precondition. Used for contract violations that are
// programming errors rather than bad input.
#define MOGAME_CHECK(condition, message)                                 \
  do {                                                                   \
    if (!(condition)) {                                                  \
      ::mogame::internal::CheckFailed(__FILE__, __LINE__, #condition,    \
                                      (message));                        \
    }                                                                    \
  } while (false)

#define MOGAME_RETURN_IF_ERROR(expr)            \
  do {                                          \
    ::absl::Status mogame_status_ = (expr);     \
    if (!mogame_status_.ok()) return mogame_status_; \
  } while (false)

#define MOGAME_CONCAT_INNER_(a, b) a##b
#define MOGAME_CONCAT_(a, b) MOGAME_CONCAT_INNER_(a, b)

#define MOGAME_ASSIGN_OR_RETURN(lhs, rexpr) \
  MOGAME_ASSIGN_OR_RETURN_IMPL_(MOGAME_CONCAT_(mogame_statusor_, __LINE__), lhs, rexpr)

#define MOGAME_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                  \
  if (!statusor.ok()) return statusor.status();             \
  lhs = std::move(statusor).value()

#endif  // MOGAME_BASE_H_
