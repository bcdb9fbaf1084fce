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

// Compiled with -mavx2. Nothing in this file may run unless the dispatcher
// has confirmed AVX2 support at runtime.

#include "pqdecide/kernels/scan.h"

#if defined(__AVX2__)
#include <immintrin.h>

#include <cstring>
#endif

namespace pqdecide::kernels {

#if defined(__AVX2__)
namespace {

// Loads 4 mask bytes and widens them to 64-bit lanes: all-ones where the
// byte is nonzero.
inline __m256i LoadMask4(const uint8_t* mask) {
  int32_t bytes;
  std::memcpy(&bytes, mask, sizeof(bytes));
  const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(bytes));
  return _mm256_xor_si256(_mm256_cmpeq_epi64(wide, _mm256_setzero_si256()),
                          _mm256_set1_epi64x(-1));
}

// All-ones lanes where lo <= v <= hi.
inline __m256i InRange4(__m256i v, __m256i lo, __m256i hi) {
  const __m256i outside =
      _mm256_or_si256(_mm256_cmpgt_epi64(lo, v), _mm256_cmpgt_epi64(v, hi));
  return _mm256_xor_si256(outside, _mm256_set1_epi64x(-1));
}

inline const __m256i* AsVec(const int64_t* p) {
  return reinterpret_cast<const __m256i*>(p);
}

void Avx2RangeMaskAnd(const int64_t* col, size_t n, int64_t lo, int64_t hi,
                      uint8_t* mask) {
  const __m256i vlo = _mm256_set1_epi64x(lo);
  const __m256i vhi = _mm256_set1_epi64x(hi);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i in = InRange4(_mm256_loadu_si256(AsVec(col + i)), vlo, vhi);
    const int bits = _mm256_movemask_pd(_mm256_castsi256_pd(in));
    mask[i] &= static_cast<uint8_t>(bits & 1);
    mask[i + 1] &= static_cast<uint8_t>((bits >> 1) & 1);
    mask[i + 2] &= static_cast<uint8_t>((bits >> 2) & 1);
    mask[i + 3] &= static_cast<uint8_t>((bits >> 3) & 1);
  }
  for (; i < n; ++i) {
    mask[i] &= static_cast<uint8_t>(col[i] >= lo && col[i] <= hi);
  }
}

int64_t Avx2CountInRange(const int64_t* col, const uint8_t* mask, size_t n,
                         int64_t lo, int64_t hi) {
  const __m256i vlo = _mm256_set1_epi64x(lo);
  const __m256i vhi = _mm256_set1_epi64x(hi);
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i sel =
        _mm256_and_si256(LoadMask4(mask + i),
                         InRange4(_mm256_loadu_si256(AsVec(col + i)), vlo, vhi));
    acc = _mm256_sub_epi64(acc, sel);  // sel lanes are 0 or -1
  }
  alignas(32) int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  int64_t count = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    count += (mask[i] != 0) & (col[i] >= lo && col[i] <= hi);
  }
  return count;
}

int64_t Avx2SumInRange(const int64_t* col, const uint8_t* mask, size_t n,
                       int64_t lo, int64_t hi) {
  const __m256i vlo = _mm256_set1_epi64x(lo);
  const __m256i vhi = _mm256_set1_epi64x(hi);
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(AsVec(col + i));
    const __m256i sel =
        _mm256_and_si256(LoadMask4(mask + i), InRange4(v, vlo, vhi));
    acc = _mm256_add_epi64(acc, _mm256_and_si256(v, sel));
  }
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  uint64_t sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) {
    if (mask[i] != 0 && col[i] >= lo && col[i] <= hi) {
      sum += static_cast<uint64_t>(col[i]);
    }
  }
  return static_cast<int64_t>(sum);
}

int64_t Avx2MaxInRange(const int64_t* col, const uint8_t* mask, size_t n,
                       int64_t lo, int64_t hi, int64_t fallback) {
  const __m256i vlo = _mm256_set1_epi64x(lo);
  const __m256i vhi = _mm256_set1_epi64x(hi);
  const __m256i vmin = _mm256_set1_epi64x(INT64_MIN);
  __m256i best = vmin;
  __m256i seen = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(AsVec(col + i));
    const __m256i sel =
        _mm256_and_si256(LoadMask4(mask + i), InRange4(v, vlo, vhi));
    const __m256i cand = _mm256_blendv_epi8(vmin, v, sel);
    best = _mm256_blendv_epi8(best, cand, _mm256_cmpgt_epi64(cand, best));
    seen = _mm256_or_si256(seen, sel);
  }
  alignas(32) int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
  bool any = !_mm256_testz_si256(seen, seen);
  int64_t result = lanes[0];
  for (int k = 1; k < 4; ++k) result = lanes[k] > result ? lanes[k] : result;
  for (; i < n; ++i) {
    if (mask[i] != 0 && col[i] >= lo && col[i] <= hi) {
      if (!any || col[i] > result) result = col[i];
      any = true;
    }
  }
  return any ? result : fallback;
}

}  // namespace

namespace internal {
const ScanKernels kAvx2Kernels = {
    &Avx2RangeMaskAnd,
    &Avx2CountInRange,
    &Avx2SumInRange,
    &Avx2MaxInRange,
};
}  // namespace internal

#else

namespace internal {
const ScanKernels kAvx2Kernels = {nullptr, nullptr, nullptr, nullptr};
}  // namespace internal

#endif  // __AVX2__

}  // namespace pqdecide::kernels
