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

#include "pqdecide/dp/random.h"

namespace pqdecide {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

RandomSource::RandomSource(uint64_t seed, uint64_t stream)
    : seed_(seed), stream_(stream) {
  key_ = Mix64(Mix64(seed + kGolden) ^ Mix64(stream * kGolden + 0x632BE59BD9B4E019ULL));
}

uint64_t RandomSource::NextU64() {
  ++counter_;
  return Mix64(key_ + counter_ * kGolden);
}

double RandomSource::Uniform() {
  // 53 random bits centred in their cell: (k + 0.5) / 2^53.
  const uint64_t k = NextU64() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

}  // namespace pqdecide
