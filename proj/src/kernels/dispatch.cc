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

#include <atomic>
#include <cstdlib>

#include "pqdecide/kernels/scan.h"

namespace pqdecide::kernels {
namespace {

bool CpuHasAvx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend InitialBackend() {
  const char* force = std::getenv("PQDECIDE_FORCE_SCALAR");
  if (force != nullptr && force[0] != '\0' && std::string_view(force) != "0") {
    return Backend::kScalar;
  }
  return Avx2Supported() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<const ScanKernels*>& ActiveTable() {
  static std::atomic<const ScanKernels*> table{&KernelsFor(InitialBackend())};
  return table;
}

}  // namespace

std::string_view BackendName(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

bool Avx2Supported() {
  static const bool supported =
      internal::kAvx2Kernels.range_mask_and != nullptr && CpuHasAvx2();
  return supported;
}

const ScanKernels& KernelsFor(Backend b) {
  if (b == Backend::kAvx2 && Avx2Supported()) return internal::kAvx2Kernels;
  return internal::kScalarKernels;
}

Backend ActiveBackend() {
  return ActiveTable().load() == &internal::kAvx2Kernels ? Backend::kAvx2
                                                          : Backend::kScalar;
}

void SetActiveBackend(Backend b) { ActiveTable().store(&KernelsFor(b)); }

void RangeMaskAnd(std::span<const int64_t> col, int64_t lo, int64_t hi,
                  std::span<uint8_t> mask) {
  ActiveTable().load()->range_mask_and(col.data(), col.size(), lo, hi,
                                       mask.data());
}

int64_t CountInRange(std::span<const int64_t> col,
                     std::span<const uint8_t> mask, int64_t lo, int64_t hi) {
  return ActiveTable().load()->count_in_range(col.data(), mask.data(),
                                              col.size(), lo, hi);
}

int64_t SumInRange(std::span<const int64_t> col, std::span<const uint8_t> mask,
                   int64_t lo, int64_t hi) {
  return ActiveTable().load()->sum_in_range(col.data(), mask.data(), col.size(),
                                            lo, hi);
}

int64_t MaxInRange(std::span<const int64_t> col, std::span<const uint8_t> mask,
                   int64_t lo, int64_t hi, int64_t fallback) {
  return ActiveTable().load()->max_in_range(col.data(), mask.data(), col.size(),
                                            lo, hi, fallback);
}

}  // namespace pqdecide::kernels
