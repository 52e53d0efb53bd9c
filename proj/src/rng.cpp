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

#include "bbdecomp/rng.hpp"

namespace bbdecomp {
namespace {

constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kKeyBump = 0x9E3779B97F4A7C15ULL;  // golden-ratio Weyl step

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
  const unsigned __int128 product =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(product >> 64);
  lo = static_cast<std::uint64_t>(product);
}

}  // namespace

void CounterRng::refill() {
  std::uint64_t x0 = index_;
  std::uint64_t x1 = block_;
  std::uint64_t key = key_;
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi;
    std::uint64_t lo;
    mulhilo(kMultiplier, x0, hi, lo);
    x0 = hi ^ key ^ x1;
    x1 = lo;
    key += kKeyBump;
  }
  buffer_[0] = x0;
  buffer_[1] = x1;
  ++index_;
  available_ = 2;
}

std::uint64_t CounterRng::next_u64() {
  if (available_ == 0) refill();
  return buffer_[2 - available_--];
}

double CounterRng::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace bbdecomp
