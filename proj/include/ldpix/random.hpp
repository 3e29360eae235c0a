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

#ifndef LDPIX_RANDOM_HPP_
#define LDPIX_RANDOM_HPP_

#include <array>
#include <cstdint>

namespace ldpix {

// Master seed for one privatization run. Every random draw in the library
// is a pure function of (seed, stream coordinates), so results are
// reproducible and independent of evaluation order and worker count.
struct RandomnessSpec {
  std::uint64_t master_seed = 0;
};

// Stream domains keep unrelated consumers of the same seed decorrelated.
inline constexpr std::uint32_t kDomainImageBits = 0;  // per-pixel flip draws
inline constexpr std::uint32_t kDomainTrials = 1;     // flip-rate estimation
inline constexpr std::uint32_t kDomainCertify = 2;    // certification runs

// Philox-4x32 with 10 rounds: a counter-based generator. One call maps a
// 128-bit counter and 64-bit key to 128 statistically independent output
// bits, with no sequential state.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Two uniform doubles in [0, 1) from one generator block, each carrying
// the full 53 bits of mantissa entropy.
std::array<double, 2> unit_pair(std::uint64_t seed, std::uint32_t word0,
                                std::uint32_t word1, std::uint32_t word2,
                                std::uint32_t domain);

// The canonical per-pixel draw used by the privatization mechanism: a pure
// function of (seed, channel, plane significance, row, col). Column pairs
// share one generator block; the low column bit selects the lane.
double pixel_draw(std::uint64_t seed, int channel, int significance, int row,
                  int col);

// Draw for an indexed trial stream (flip-rate estimation, certification).
// subtag separates parallel streams within one domain.
double trial_draw(std::uint64_t seed, std::uint32_t domain,
                  std::uint32_t subtag, std::int64_t trial);

// Derives a decorrelated child seed (per input file, per sweep repetition)
// from a master seed, so batch runs give every item an independent stream
// regardless of scheduling.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

}  // namespace ldpix

#endif  // LDPIX_RANDOM_HPP_
