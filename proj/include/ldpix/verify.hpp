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

#ifndef LDPIX_VERIFY_HPP_
#define LDPIX_VERIFY_HPP_

#include <cstdint>
#include <vector>

#include "ldpix/budget.hpp"
#include "ldpix/image.hpp"
#include "ldpix/random.hpp"

namespace ldpix {

// Exact (Clopper-Pearson) two-sided binomial confidence interval for the
// success probability after observing `successes` out of `trials`.
// confidence must lie in (0, 1).
struct BinomialInterval {
  double lower = 0.0;
  double upper = 1.0;
};
BinomialInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                 double confidence);

// Outcome of statistically certifying one randomized-response bit channel.
// The certificate estimates the largest log likelihood-ratio any output
// can induce between the two inputs and compares its lower confidence
// bound against the claimed budget: the claim passes when it is at least
// that bound. log_ratio_lower/upper bound the true worst-case log ratio
// (which equals the budget exactly for correctly calibrated randomized
// response, so the bound is tight, not slack).
struct LdpTestResult {
  int channel = -1;            // -1 outside a pipeline context
  int significance = 0;        // 0 outside a pipeline context
  double claimed_eps = 0.0;
  double log_ratio_estimate = 0.0;
  double log_ratio_lower = 0.0;
  double log_ratio_upper = 0.0;
  std::int64_t trials = 0;
  double confidence = 0.0;
  bool passed = false;
};

// Certifies that the mechanism's own bit channel at budget eps satisfies
// the claim, from `trials` fresh runs per input value. Requires
// trials >= 100000 and confidence in (0.9, 1); throws
// std::invalid_argument otherwise.
LdpTestResult certify_bit_ldp(double eps, std::int64_t trials,
                              const RandomnessSpec& rand, double confidence);

// Negative-control hook: certifies a channel that actually keeps the bit
// with probability actual_p_keep against a claimed budget. A miscalibrated
// channel (actual keep probability implying a larger log ratio than the
// claim) must fail.
LdpTestResult certify_bit_miscalibrated(double claimed_eps,
                                        double actual_p_keep,
                                        std::int64_t trials,
                                        const RandomnessSpec& rand,
                                        double confidence);

// Test hook for pipeline certification: pretends plane (channel,
// significance) keeps bits with probability p_keep instead of its
// calibrated value.
struct PlaneOverride {
  int channel = 0;
  int significance = 0;
  double p_keep = 0.5;
};

// Certifies every plane of an allocation with a Bonferroni-corrected
// per-plane confidence (family-wise level = confidence). Results come
// back channel-major, b ascending, one per plane.
std::vector<LdpTestResult> certify_pixel_pipeline(
    const BudgetAllocation& alloc, std::int64_t trials,
    const RandomnessSpec& rand, double confidence = 0.999,
    const PlaneOverride* override_plane = nullptr);

// Mean privatized-image quality over several seeds at each budget, for an
// ascending budget ladder.
struct SweepResult {
  std::vector<double> epsilon_totals;
  std::vector<double> mean_psnr_db;
  std::vector<double> std_error_db;
  // True when every consecutive pair of means is non-decreasing up to one
  // pooled standard error.
  bool monotone_within_error = false;
};

// Runs the full pipeline `seeds` times per budget with fresh derived seeds
// and reports mean PSNR against the input. Requires at least 3 budgets in
// non-decreasing order (ties allowed) and at least 5 seeds; throws
// std::invalid_argument otherwise.
SweepResult monotone_psnr_sweep(const PixelImage& img,
                                const std::vector<double>& epsilon_totals,
                                int seeds, const RandomnessSpec& rand,
                                bool prune = true);

// Deterministic synthetic photograph-like test image: smooth gradients, a
// highlight blob, and sinusoidal texture, phase-shifted per channel.
// channels must be 1 or 3.
PixelImage make_test_pattern(int width, int height, int channels);

}  // namespace ldpix

#endif  // LDPIX_VERIFY_HPP_
