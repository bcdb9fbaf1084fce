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

#ifndef PQDECIDE_KERNELS_SCAN_H_
#define PQDECIDE_KERNELS_SCAN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pqdecide::kernels {

// Column-scan primitives over int64 columns and byte masks (0 or 1 per row).
// A value v is "in range" when lo <= v <= hi.
//
// RangeMaskAnd:  mask[i] &= in_range(col[i])
// CountInRange:  #{i : mask[i] && in_range(col[i])}
// SumInRange:    sum of col[i] over the same rows (two's complement wrap)
// MaxInRange:    largest col[i] over the same rows, or `fallback` if none
struct ScanKernels {
  void (*range_mask_and)(const int64_t* col, size_t n, int64_t lo, int64_t hi,
                         uint8_t* mask);
  int64_t (*count_in_range)(const int64_t* col, const uint8_t* mask, size_t n,
                            int64_t lo, int64_t hi);
  int64_t (*sum_in_range)(const int64_t* col, const uint8_t* mask, size_t n,
                          int64_t lo, int64_t hi);
  int64_t (*max_in_range)(const int64_t* col, const uint8_t* mask, size_t n,
                          int64_t lo, int64_t hi, int64_t fallback);
};

enum class Backend { kScalar, kAvx2 };

std::string_view BackendName(Backend b);

// True when the running CPU supports AVX2 and the AVX2 kernels were built.
bool Avx2Supported();

// Kernel table for a specific backend. Requesting kAvx2 on a machine without
// it returns the scalar table.
const ScanKernels& KernelsFor(Backend b);

// Backend chosen at first use: AVX2 when supported, unless the environment
// variable PQDECIDE_FORCE_SCALAR is set to a non-empty value other than "0".
Backend ActiveBackend();
void SetActiveBackend(Backend b);

// Convenience wrappers on the active backend.
void RangeMaskAnd(std::span<const int64_t> col, int64_t lo, int64_t hi,
                  std::span<uint8_t> mask);
int64_t CountInRange(std::span<const int64_t> col,
                     std::span<const uint8_t> mask, int64_t lo, int64_t hi);
int64_t SumInRange(std::span<const int64_t> col, std::span<const uint8_t> mask,
                   int64_t lo, int64_t hi);
int64_t MaxInRange(std::span<const int64_t> col, std::span<const uint8_t> mask,
                   int64_t lo, int64_t hi, int64_t fallback);

namespace internal {
extern const ScanKernels kScalarKernels;
// Null entries when the AVX2 translation unit is not compiled in.
extern const ScanKernels kAvx2Kernels;
}  // namespace internal

}  // namespace pqdecide::kernels

#endif  // PQDECIDE_KERNELS_SCAN_H_
