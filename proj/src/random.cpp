// Copyright 2026 The ldpix Authors
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

#include "ldpix/random.hpp"

namespace ldpix {
namespace {

constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9;  // golden ratio
constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85;  // sqrt(3) - 1
constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53;
constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57;

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                      std::uint32_t* lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  *hi = static_cast<std::uint32_t>(p >> 32);
  *lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& ctr,
    const std::array<std::uint32_t, 2>& key) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(kPhiloxM4x32A, ctr[0], &hi0, &lo0);
  mul_hi_lo(kPhiloxM4x32B, ctr[2], &hi1, &lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline double to_unit(std::uint32_t lo, std::uint32_t hi) {
  const std::uint64_t bits =
      static_cast<std::uint64_t>(lo) | (static_cast<std::uint64_t>(hi) << 32);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    counter = round_once(counter, key);
    key[0] += kPhiloxW32A;
    key[1] += kPhiloxW32B;
  }
  return counter;
}

std::array<double, 2> unit_pair(std::uint64_t seed, std::uint32_t word0,
                                std::uint32_t word1, std::uint32_t word2,
                                std::uint32_t domain) {
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed),
      static_cast<std::uint32_t>(seed >> 32)};
  const std::array<std::uint32_t, 4> out =
      philox4x32_10({word0, word1, word2, domain}, key);
  return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
}

double pixel_draw(std::uint64_t seed, int channel, int significance, int row,
                  int col) {
  const std::uint32_t tag = static_cast<std::uint32_t>(channel) |
                            (static_cast<std::uint32_t>(significance) << 8);
  const std::array<double, 2> pair =
      unit_pair(seed, static_cast<std::uint32_t>(col >> 1),
                static_cast<std::uint32_t>(row), tag, kDomainImageBits);
  return pair[col & 1];
}

double trial_draw(std::uint64_t seed, std::uint32_t domain,
                  std::uint32_t subtag, std::int64_t trial) {
  const std::uint64_t t = static_cast<std::uint64_t>(trial);
  const std::array<double, 2> pair =
      unit_pair(seed, static_cast<std::uint32_t>(t >> 1),
                static_cast<std::uint32_t>(t >> 33), subtag, domain);
  return pair[t & 1];
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
  // SplitMix64 finalizer over master + index * odd constant: cheap, and
  // avalanches every input bit into the child seed.
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace ldpix
