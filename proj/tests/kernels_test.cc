// Copyright 2026 The pqdecide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pqdecide/kernels/scan.h"

namespace pqdecide::kernels {
namespace {

struct Case {
  std::vector<int64_t> col;
  std::vector<uint8_t> mask;
  int64_t lo;
  int64_t hi;
};

Case RandomCase(std::mt19937_64& gen) {
  Case c;
  // Lengths around the 4-lane boundary plus some long ones.
  const size_t n = gen() % 3 == 0 ? gen() % 9 : gen() % 2000;
  const int shape = static_cast<int>(gen() % 3);
  for (size_t i = 0; i < n; ++i) {
    int64_t v;
    if (shape == 0) {
      v = static_cast<int64_t>(gen() % 64) - 16;
    } else if (shape == 1) {
      v = static_cast<int64_t>(gen());  // full int64 range
    } else {
      v = static_cast<int64_t>(gen() % 1000000);
    }
    c.col.push_back(v);
    c.mask.push_back(gen() % 4 == 0 ? 0 : 1);
  }
  switch (gen() % 4) {
    case 0:
      c.lo = std::numeric_limits<int64_t>::min();
      c.hi = std::numeric_limits<int64_t>::max();
      break;
    case 1:
      c.lo = static_cast<int64_t>(gen() % 40) - 20;
      c.hi = c.lo + static_cast<int64_t>(gen() % 30);
      break;
    case 2:
      c.lo = 5;
      c.hi = 4;  // empty
      break;
    default:
      c.lo = static_cast<int64_t>(gen());
      c.hi = static_cast<int64_t>(gen());
      if (c.lo > c.hi) std::swap(c.lo, c.hi);
  }
  return c;
}

class KernelEquivalenceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!Avx2Supported()) GTEST_SKIP() << "AVX2 not available";
  }
};

TEST_F(KernelEquivalenceTest, Avx2MatchesScalarOnRandomColumns) {
  const ScanKernels& s = KernelsFor(Backend::kScalar);
  const ScanKernels& v = KernelsFor(Backend::kAvx2);
  ASSERT_NE(&s, &v);
  std::mt19937_64 gen(2024);
  for (int iter = 0; iter < 2000; ++iter) {
    Case c = RandomCase(gen);
    const size_t n = c.col.size();
    std::vector<uint8_t> ms = c.mask;
    std::vector<uint8_t> mv = c.mask;
    s.range_mask_and(c.col.data(), n, c.lo, c.hi, ms.data());
    v.range_mask_and(c.col.data(), n, c.lo, c.hi, mv.data());
    ASSERT_EQ(ms, mv) << "iteration " << iter;
    EXPECT_EQ(s.count_in_range(c.col.data(), c.mask.data(), n, c.lo, c.hi),
              v.count_in_range(c.col.data(), c.mask.data(), n, c.lo, c.hi));
    EXPECT_EQ(s.sum_in_range(c.col.data(), c.mask.data(), n, c.lo, c.hi),
              v.sum_in_range(c.col.data(), c.mask.data(), n, c.lo, c.hi));
    EXPECT_EQ(
        s.max_in_range(c.col.data(), c.mask.data(), n, c.lo, c.hi, -7),
        v.max_in_range(c.col.data(), c.mask.data(), n, c.lo, c.hi, -7));
  }
}

TEST(ScalarKernelTest, SmallHandChecked) {
  const ScanKernels& k = KernelsFor(Backend::kScalar);
  const std::vector<int64_t> col = {3, -1, 7, 7, 10, 0};
  std::vector<uint8_t> mask = {1, 1, 1, 0, 1, 1};
  EXPECT_EQ(k.count_in_range(col.data(), mask.data(), col.size(), 0, 7), 3);
  EXPECT_EQ(k.sum_in_range(col.data(), mask.data(), col.size(), 0, 7), 10);
  EXPECT_EQ(k.max_in_range(col.data(), mask.data(), col.size(), 0, 7, -1), 7);
  EXPECT_EQ(k.max_in_range(col.data(), mask.data(), col.size(), 20, 30, -1),
            -1);
  k.range_mask_and(col.data(), col.size(), 0, 5, mask.data());
  EXPECT_EQ(mask, (std::vector<uint8_t>{1, 0, 0, 0, 0, 1}));
}

TEST(DispatchTest, BackendCanBeForced) {
  const Backend before = ActiveBackend();
  SetActiveBackend(Backend::kScalar);
  EXPECT_EQ(ActiveBackend(), Backend::kScalar);
  const std::vector<int64_t> col = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  const std::vector<uint8_t> mask(col.size(), 1);
  EXPECT_EQ(SumInRange(col, mask, 2, 8), 35);
  if (Avx2Supported()) {
    SetActiveBackend(Backend::kAvx2);
    EXPECT_EQ(ActiveBackend(), Backend::kAvx2);
    EXPECT_EQ(SumInRange(col, mask, 2, 8), 35);
  }
  SetActiveBackend(before);
  EXPECT_EQ(BackendName(Backend::kScalar), "scalar");
}

}  // namespace
}  // namespace pqdecide::kernels
