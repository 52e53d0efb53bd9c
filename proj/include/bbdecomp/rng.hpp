// Copyright 2026 the bbdecomp authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

namespace bbdecomp {

/// Identifies a reproducible random stream. Identical (seed, stream) always
/// replays the identical sequence, on every platform.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Counter-based generator (Philox-style 2x64 bijection, 10 rounds).
///
/// The key is the seed and the counter block is (stream, index), so distinct
/// streams of one seed are disjoint by construction: no state to carry around,
/// no burn-in, and parallel substreams never overlap.
class CounterRng {
 public:
  explicit CounterRng(RngSpec spec = {}) : key_(spec.seed), block_(spec.stream) {}

  std::uint64_t next_u64();

  /// Uniform draw in [0, 1) with 53-bit resolution.
  double next_uniform();

 private:
  void refill();

  std::uint64_t key_;
  std::uint64_t block_;
  std::uint64_t index_ = 0;
  std::uint64_t buffer_[2] = {0, 0};
  int available_ = 0;
};

}  // namespace bbdecomp
