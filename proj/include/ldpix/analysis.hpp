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

#ifndef LDPIX_ANALYSIS_HPP_
#define LDPIX_ANALYSIS_HPP_

#include <optional>
#include <vector>

#include "ldpix/image.hpp"

namespace ldpix {

// Budget and keep-probability of one bit plane, as reported to users.
struct PlaneBudget {
  int channel = 0;       // 0-based channel index
  int significance = 0;  // b in 1..8, 8 = most significant
  double epsilon = 0.0;
  double p_keep = 0.0;
};

// Everything a user needs to audit one privatization run.
struct PrivacyReport {
  double epsilon_total = 0.0;              // sum of all per-plane budgets
  std::vector<PlaneBudget> allocation;     // channel-major, b ascending
  std::vector<double> channel_weights;     // weight table used
  double tv_bound = 0.0;                   // worst-case per-sample TV
  double advantage_bound = 0.0;            // distinguishing advantage cap
  std::optional<double> psnr_db;           // vs. the input, when available
  bool prune = true;                       // perceptual obfuscation on/off
};

// Worst-case total-variation distance between the privatized distributions
// of two inputs whose budgets sum to eps: (e^eps - 1)/(e^eps + 1), i.e.
// tanh(eps / 2). Strictly increasing and concave in eps >= 0.
double tv_bound(double eps);

// Cap on any adversary's advantage over random guessing when telling two
// candidate inputs apart from one privatized sample: tv_bound(eps) / 2.
double advantage_bound(double eps);

// Exact total-variation distance between the randomized-response output
// distributions of samples x and x_prime under per-bit budgets eps_bits
// (most significant first), by full enumeration of the 2^d outcomes.
// Requires 1 <= d <= 8 and x, x_prime < 2^d; throws std::invalid_argument
// otherwise. Never exceeds tv_bound(sum(eps_bits)), with equality at d = 1.
double exact_tv_reduced(const std::vector<double>& eps_bits, unsigned x,
                        unsigned x_prime);

// Converts a budget quoted per transform coefficient at block granularity
// into the per-pixel budget of this pipeline's accounting: one block
// privatizes (block_w * block_h - removed_coeffs) * channels coefficient
// values that all depend on every pixel in the block, so the budgets add.
// Throws std::invalid_argument when counts are non-positive, the budget is
// negative, or removed_coeffs is not in [0, block_w * block_h).
double blocklevel_to_pixel_epsilon(double per_coeff_eps, int block_w,
                                   int block_h, int channels,
                                   int removed_coeffs);

// Peak signal-to-noise ratio in dB over all samples jointly, with peak
// 255. Returns +infinity for identical images. Throws
// std::invalid_argument when shapes disagree.
double psnr(const PixelImage& a, const PixelImage& b);

}  // namespace ldpix

#endif  // LDPIX_ANALYSIS_HPP_
