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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ldpix/budget.hpp"
#include "ldpix/verify.hpp"

using ldpix::BinomialInterval;
using ldpix::BudgetAllocation;
using ldpix::LdpTestResult;
using ldpix::PixelImage;
using ldpix::RandomnessSpec;
using ldpix::WeightTable;

// ---------------------------------------------------------------------------
// Exact binomial intervals

TEST_CASE("binomial intervals pin their degenerate endpoints") {
  const BinomialInterval none = ldpix::clopper_pearson(0, 1000, 0.99);
  CHECK(none.lower == 0.0);
  CHECK(none.upper > 0.0);
  CHECK(none.upper < 0.02);

  const BinomialInterval all = ldpix::clopper_pearson(1000, 1000, 0.99);
  CHECK(all.upper == 1.0);
  CHECK(all.lower < 1.0);
  CHECK(all.lower > 0.98);
}

TEST_CASE("binomial intervals bracket the sample rate, tighter with data") {
  const BinomialInterval half = ldpix::clopper_pearson(5, 10, 0.95);
  CHECK(half.lower > 0.18);
  CHECK(half.lower < 0.19);
  CHECK(half.upper > 0.81);
  CHECK(half.upper < 0.82);
  // 5/10 is symmetric, so the interval must be too.
  CHECK(half.upper == doctest::Approx(1.0 - half.lower).epsilon(1e-9));

  const BinomialInterval big = ldpix::clopper_pearson(5000, 10000, 0.95);
  CHECK(big.lower > half.lower);
  CHECK(big.upper < half.upper);
  CHECK(big.lower < 0.5);
  CHECK(big.upper > 0.5);

  const BinomialInterval wider = ldpix::clopper_pearson(5000, 10000, 0.999);
  CHECK(wider.lower < big.lower);
  CHECK(wider.upper > big.upper);
}

TEST_CASE("binomial intervals reject malformed samples") {
  CHECK_THROWS_AS(ldpix::clopper_pearson(-1, 10, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(ldpix::clopper_pearson(11, 10, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(ldpix::clopper_pearson(5, 0, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(ldpix::clopper_pearson(5, 10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ldpix::clopper_pearson(5, 10, 1.0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Single-channel certification

TEST_CASE("a correctly calibrated channel passes and is estimated tightly") {
  const LdpTestResult r =
      ldpix::certify_bit_ldp(std::log(3.0), 150000, RandomnessSpec{11}, 0.99);
  CHECK(r.passed);
  CHECK(std::abs(r.log_ratio_estimate - std::log(3.0)) < 0.05);
  CHECK(r.log_ratio_lower < std::log(3.0));
  CHECK(r.log_ratio_upper > std::log(3.0));
  CHECK(r.trials == 150000);
  CHECK(r.confidence == 0.99);
  CHECK(r.channel == -1);  // standalone, not a pipeline plane
}

TEST_CASE("a zero budget certifies: both outputs are coin flips") {
  const LdpTestResult r =
      ldpix::certify_bit_ldp(0.0, 150000, RandomnessSpec{12}, 0.99);
  CHECK(r.passed);
  CHECK(r.log_ratio_lower <= 0.0);
  CHECK(std::abs(r.log_ratio_estimate) < 0.05);
}

TEST_CASE("a moderate budget certifies with a meaningful estimate") {
  const LdpTestResult r =
      ldpix::certify_bit_ldp(5.0, 150000, RandomnessSpec{13}, 0.99);
  CHECK(r.passed);
  CHECK(std::abs(r.log_ratio_estimate - 5.0) < 0.3);
}

TEST_CASE("budgets beyond the flip resolution still certify conservatively") {
  // No flips can be observed, so the lower confidence bound stays finite
  // and far below the claim; the claim is therefore never rejected.
  const LdpTestResult r =
      ldpix::certify_bit_ldp(50.0, 100000, RandomnessSpec{14}, 0.99);
  CHECK(r.passed);
  CHECK(std::isfinite(r.log_ratio_lower));
  CHECK(r.log_ratio_lower < 50.0);
  CHECK(r.log_ratio_lower > 5.0);  // but it is not vacuous either
}

TEST_CASE("a miscalibrated channel is rejected") {
  // Keeps with probability 0.9 (true log ratio log(9) ~ 2.197) while
  // claiming only log(3) ~ 1.099.
  const LdpTestResult r = ldpix::certify_bit_miscalibrated(
      std::log(3.0), 0.9, 200000, RandomnessSpec{15}, 0.99);
  CHECK_FALSE(r.passed);
  CHECK(r.log_ratio_lower > std::log(3.0));
}

TEST_CASE("the same channel passes once the claim covers its true ratio") {
  const LdpTestResult r = ldpix::certify_bit_miscalibrated(
      2.3, 0.9, 200000, RandomnessSpec{15}, 0.99);
  CHECK(r.passed);
  CHECK(std::abs(r.log_ratio_estimate - std::log(9.0)) < 0.1);
}

TEST_CASE("certification validates its sample-size and confidence inputs") {
  const RandomnessSpec rand{1};
  CHECK_THROWS_AS(ldpix::certify_bit_ldp(1.0, 99999, rand, 0.99),
                  std::invalid_argument);
  CHECK_THROWS_AS(ldpix::certify_bit_ldp(1.0, 100000, rand, 0.9),
                  std::invalid_argument);
  CHECK_THROWS_AS(ldpix::certify_bit_ldp(1.0, 100000, rand, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ldpix::certify_bit_ldp(-1.0, 100000, rand, 0.99),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      ldpix::certify_bit_miscalibrated(1.0, 1.5, 100000, rand, 0.99),
      std::invalid_argument);
}

TEST_CASE("certification is deterministic under a fixed seed") {
  const LdpTestResult a =
      ldpix::certify_bit_ldp(2.0, 100000, RandomnessSpec{21}, 0.95);
  const LdpTestResult b =
      ldpix::certify_bit_ldp(2.0, 100000, RandomnessSpec{21}, 0.95);
  CHECK(a.log_ratio_estimate == b.log_ratio_estimate);
  CHECK(a.log_ratio_lower == b.log_ratio_lower);
}

// ---------------------------------------------------------------------------
// Whole-pipeline certification

TEST_CASE("every plane of a default color allocation certifies") {
  const BudgetAllocation alloc =
      ldpix::allocate(20.0, WeightTable::color_default());
  const std::vector<LdpTestResult> results =
      ldpix::certify_pixel_pipeline(alloc, 100000, RandomnessSpec{31}, 0.999);
  REQUIRE(results.size() == 24);
  for (int channel = 0; channel < 3; ++channel) {
    for (int b = 1; b <= 8; ++b) {
      const LdpTestResult& r = results[channel * 8 + (b - 1)];
      CHECK(r.channel == channel);
      CHECK(r.significance == b);
      CHECK(r.claimed_eps == alloc.at(channel, b));
      CHECK(r.passed);
      // Bonferroni correction: per-plane confidence above the family level.
      CHECK(r.confidence == doctest::Approx(1.0 - 0.001 / 24.0));
    }
  }
}

TEST_CASE("an injected miscalibration is caught on exactly that plane") {
  const BudgetAllocation alloc =
      ldpix::allocate(20.0, WeightTable::color_default());
  const ldpix::PlaneOverride bad{/*channel=*/1, /*significance=*/3,
                                 /*p_keep=*/0.9};
  const std::vector<LdpTestResult> results = ldpix::certify_pixel_pipeline(
      alloc, 100000, RandomnessSpec{31}, 0.999, &bad);
  REQUIRE(results.size() == 24);
  for (const LdpTestResult& r : results) {
    if (r.channel == 1 && r.significance == 3) {
      CHECK_FALSE(r.passed);
      CHECK(r.log_ratio_lower > r.claimed_eps);
    } else {
      CHECK(r.passed);
    }
  }
}

TEST_CASE("pipeline certification validates its allocation") {
  BudgetAllocation alloc = ldpix::allocate(8.0, WeightTable::grayscale());
  alloc.epsilons.pop_back();
  CHECK_THROWS_AS(
      ldpix::certify_pixel_pipeline(alloc, 100000, RandomnessSpec{1}),
      std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Quality sweeps

TEST_CASE("mean quality rises with the budget across a wide ladder") {
  const PixelImage img = ldpix::make_test_pattern(64, 64, 1);
  const ldpix::SweepResult sweep = ldpix::monotone_psnr_sweep(
      img, {2.0, 8.0, 32.0}, 6, RandomnessSpec{41}, /*prune=*/true);
  REQUIRE(sweep.mean_psnr_db.size() == 3);
  CHECK(sweep.monotone_within_error);
  CHECK(sweep.mean_psnr_db[0] < sweep.mean_psnr_db[2]);
  for (double se : sweep.std_error_db) CHECK(se >= 0.0);
}

TEST_CASE("a repeated budget yields equal means within noise") {
  const PixelImage img = ldpix::make_test_pattern(48, 48, 1);
  const ldpix::SweepResult sweep = ldpix::monotone_psnr_sweep(
      img, {6.0, 6.0, 6.0}, 8, RandomnessSpec{42}, /*prune=*/true);
  CHECK(sweep.monotone_within_error);
  // Same distribution at every rung: means agree to a few standard errors.
  const double spread =
      std::abs(sweep.mean_psnr_db[2] - sweep.mean_psnr_db[0]);
  const double pooled = std::sqrt(sweep.std_error_db[0] * sweep.std_error_db[0] +
                                  sweep.std_error_db[2] * sweep.std_error_db[2]);
  CHECK(spread <= 4.0 * pooled + 1e-9);
}

TEST_CASE("budgets past the flip resolution produce infinite quality rungs") {
  const PixelImage img = ldpix::make_test_pattern(32, 32, 1);
  const ldpix::SweepResult sweep = ldpix::monotone_psnr_sweep(
      img, {1.0, 12.0, 7300.0}, 5, RandomnessSpec{43}, /*prune=*/false);
  CHECK(std::isinf(sweep.mean_psnr_db[2]));
  CHECK(sweep.std_error_db[2] == 0.0);
  CHECK(sweep.monotone_within_error);
}

TEST_CASE("sweeps are deterministic in the master seed") {
  const PixelImage img = ldpix::make_test_pattern(32, 32, 3);
  const ldpix::SweepResult a = ldpix::monotone_psnr_sweep(
      img, {4.0, 10.0, 24.0}, 5, RandomnessSpec{44});
  const ldpix::SweepResult b = ldpix::monotone_psnr_sweep(
      img, {4.0, 10.0, 24.0}, 5, RandomnessSpec{44});
  CHECK(a.mean_psnr_db == b.mean_psnr_db);
  CHECK(a.std_error_db == b.std_error_db);
}

TEST_CASE("sweep inputs are validated") {
  const PixelImage img = ldpix::make_test_pattern(16, 16, 1);
  const RandomnessSpec rand{1};
  CHECK_THROWS_AS(ldpix::monotone_psnr_sweep(img, {1.0, 2.0}, 6, rand),
                  std::invalid_argument);
  CHECK_THROWS_AS(ldpix::monotone_psnr_sweep(img, {2.0, 1.0, 3.0}, 6, rand),
                  std::invalid_argument);
  CHECK_THROWS_AS(ldpix::monotone_psnr_sweep(img, {1.0, 2.0, 3.0}, 4, rand),
                  std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Synthetic test pattern

TEST_CASE("the test pattern is deterministic and textured") {
  const PixelImage a = ldpix::make_test_pattern(112, 112, 3);
  const PixelImage b = ldpix::make_test_pattern(112, 112, 3);
  CHECK(a == b);
  CHECK(a.width == 112);
  CHECK(a.height == 112);
  CHECK(a.channels == 3);

  double mean = 0.0;
  for (std::uint8_t s : a.samples) mean += s;
  mean /= static_cast<double>(a.samples.size());
  double var = 0.0;
  for (std::uint8_t s : a.samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(a.samples.size());
  CHECK(std::sqrt(var) > 10.0);  // not flat: gradients and texture

  // Channels are tinted apart so color handling is exercised.
  bool channels_differ = false;
  for (int r = 0; r < a.height && !channels_differ; ++r) {
    for (int c = 0; c < a.width && !channels_differ; ++c) {
      channels_differ = a.at(r, c, 0) != a.at(r, c, 2);
    }
  }
  CHECK(channels_differ);

  CHECK(ldpix::make_test_pattern(1, 1, 1).samples.size() == 1);
  CHECK_THROWS_AS(ldpix::make_test_pattern(8, 8, 2), std::invalid_argument);
}
