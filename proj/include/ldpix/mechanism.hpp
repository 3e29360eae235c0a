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

#ifndef LDPIX_MECHANISM_HPP_
#define LDPIX_MECHANISM_HPP_

#include <cstdint>
#include <utility>

#include "ldpix/analysis.hpp"
#include "ldpix/bitplane.hpp"
#include "ldpix/budget.hpp"
#include "ldpix/image.hpp"
#include "ldpix/random.hpp"

namespace ldpix {

// Keep/flip probabilities of binary randomized response at budget eps:
//   p_keep = e^eps / (e^eps + 1),   p_flip = 1 / (e^eps + 1).
// p_flip is computed first (it stays accurate when e^eps is huge) and
// p_keep as its complement, so p_keep + p_flip == 1 exactly and the ratio
// p_keep / p_flip tracks e^eps at every budget. Budgets large enough that
// p_flip < 2^-53 behave as the identity: no uniform draw can land below
// the flip threshold.
struct FlipProbabilities {
  double p_keep = 0.5;
  double p_flip = 0.5;

  // Throws std::invalid_argument on a negative or non-finite budget.
  static FlipProbabilities from_epsilon(double eps);
};

// Binary randomized response: returns bit when draw < p_keep(eps), else
// 1 - bit. draw must lie in [0, 1).
int rr_bit(int bit, double eps, double draw);

// The end-to-end per-image mechanism:
//   [RGB -> YCbCr if RGB input]
//   -> optional LL pruning (perceptual obfuscation)
//   -> bit-plane slicing
//   -> per-plane randomized response at the plane's allocated budget
//   -> reconstruction
//   -> [YCbCr -> RGB if RGB input]
// Every bit flip is a pure function of (seed, channel, plane, row, col),
// so the output is identical for any worker count. The report's PSNR is
// measured against the input in its own colorspace. Sequential
// composition makes the whole pipeline (sum of per-plane budgets)-LDP per
// pixel; pruning and reconstruction only post-process randomized bits and
// cost no extra budget.
//
// Throws std::invalid_argument when the allocation's channel count does
// not match the image or the allocation is malformed.
std::pair<PixelImage, PrivacyReport> privatize(const PixelImage& img,
                                               const BudgetAllocation& alloc,
                                               const RandomnessSpec& rand,
                                               bool prune, int workers = 1);

// Monte-Carlo estimate of the flip rate of rr_bit at budget eps. Requires
// trials >= 10000; throws std::invalid_argument otherwise. Expectation is
// p_flip = 1 / (e^eps + 1); at eps = 0 the output is an unbiased coin.
double empirical_flip_rate(double eps, std::int64_t trials,
                           const RandomnessSpec& rand);

}  // namespace ldpix

#endif  // LDPIX_MECHANISM_HPP_
