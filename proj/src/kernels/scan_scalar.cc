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

#include "pqdecide/kernels/scan.h"

namespace pqdecide::kernels {
namespace {

inline bool InRange(int64_t v, int64_t lo, int64_t hi) {
  return v >= lo && v <= hi;
}

void ScalarRangeMaskAnd(const int64_t* col, size_t n, int64_t lo, int64_t hi,
                        uint8_t* mask) {
  for (size_t i = 0; i < n; ++i) {
    mask[i] &= static_cast<uint8_t>(InRange(col[i], lo, hi));
  }
}

int64_t ScalarCountInRange(const int64_t* col, const uint8_t* mask, size_t n,
                           int64_t lo, int64_t hi) {
  int64_t count = 0;
  for (size_t i = 0; i < n; ++i) {
    count += (mask[i] != 0) & InRange(col[i], lo, hi);
  }
  return count;
}

int64_t ScalarSumInRange(const int64_t* col, const uint8_t* mask, size_t n,
                         int64_t lo, int64_t hi) {
  uint64_t sum = 0;
  for (size_t i = 0; i < n; ++i) {
    if (mask[i] != 0 && InRange(col[i], lo, hi)) {
      sum += static_cast<uint64_t>(col[i]);
    }
  }
  return static_cast<int64_t>(sum);
}

int64_t ScalarMaxInRange(const int64_t* col, const uint8_t* mask, size_t n,
                         int64_t lo, int64_t hi, int64_t fallback) {
  bool any = false;
  int64_t best = 0;
  for (size_t i = 0; i < n; ++i) {
    if (mask[i] != 0 && InRange(col[i], lo, hi)) {
      if (!any || col[i] > best) best = col[i];
      any = true;
    }
  }
  return any ? best : fallback;
}

}  // namespace

namespace internal {
const ScanKernels kScalarKernels = {
    &ScalarRangeMaskAnd,
    &ScalarCountInRange,
    &ScalarSumInRange,
    &ScalarMaxInRange,
};
}  // namespace internal

}  // namespace pqdecide::kernels
