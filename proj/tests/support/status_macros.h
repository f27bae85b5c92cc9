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

#ifndef MOGAME_TESTS_SUPPORT_STATUS_MACROS_H_
#define MOGAME_TESTS_SUPPORT_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gtest/gtest.h"

#define MOGAME_TEST_CONCAT_INNER_(a, b) a##b
#define MOGAME_TEST_CONCAT_(a, b) MOGAME_TEST_CONCAT_INNER_(a, b)

#define ASSERT_OK(expr)                                          \
  do {                                                           \
    const ::absl::Status mogame_s_ = ::mogame::testing::ToStatus(expr); \
    ASSERT_TRUE(mogame_s_.ok()) << mogame_s_;                    \
  } while (false)
#define EXPECT_OK(expr)                                          \
  do {                                                           \
    const ::absl::Status mogame_s_ = ::mogame::testing::ToStatus(expr); \
    EXPECT_TRUE(mogame_s_.ok()) << mogame_s_;                    \
  } while (false)

#define ASSERT_OK_AND_ASSIGN(lhs, rexpr)                                     \
  ASSERT_OK_AND_ASSIGN_IMPL_(MOGAME_TEST_CONCAT_(statusor_, __LINE__), lhs, \
                             rexpr)
#define ASSERT_OK_AND_ASSIGN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                               \
  ASSERT_TRUE(statusor.ok()) << statusor.status();       \
  lhs = std::move(statusor).value()

namespace mogame::testing {

inline absl::Status ToStatus(const absl::Status& s) { return s; }
template <typename T>
absl::Status ToStatus(const absl::StatusOr<T>& s) {
  return s.status();
}

}  // namespace mogame::testing

#endif  // MOGAME_TESTS_SUPPORT_STATUS_MACROS_H_
