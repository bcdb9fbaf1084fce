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

#ifndef PQDECIDE_DP_RANDOM_H_
#define PQDECIDE_DP_RANDOM_H_

#include <cstdint>

namespace pqdecide {

// Counter-based generator: the n-th output is a fixed function of
// (seed, stream, n), so results do not depend on platform or library
// versions. Each (seed, stream) pair yields an independent sequence.
//
// Not thread-safe; give each concurrent task its own stream.
class RandomSource {
 public:
  RandomSource(uint64_t seed, uint64_t stream);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }
  uint64_t draws() const { return counter_; }

  uint64_t NextU64();

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double Uniform();

 private:
  uint64_t seed_;
  uint64_t stream_;
  uint64_t key_;
  uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
inline uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace pqdecide

#endif  // PQDECIDE_DP_RANDOM_H_
