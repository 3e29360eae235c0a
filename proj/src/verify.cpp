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

#include "ldpix/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>

#include "ldpix/analysis.hpp"
#include "ldpix/mechanism.hpp"

namespace ldpix {

BinomialInterval clopper_pearson(std::int64_t successes, std::int64_t trials,
                                 double confidence) {
  if (trials <= 0 || successes < 0 || successes > trials) {
    throw std::invalid_argument("invalid binomial sample");
  }
  if (!(confidence > 0.0) || !(confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0, 1)");
  }
  const double alpha = 1.0 - confidence;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  BinomialInterval ci;
  if (successes == 0) {
    ci.lower = 0.0;
  } else {
    ci.lower = boost::math::quantile(
        boost::math::beta_distribution<double>(k, n - k + 1.0), alpha / 2.0);
  }
  if (successes == trials) {
    ci.upper = 1.0;
  } else {
    ci.upper = boost::math::quantile(
        boost::math::beta_distribution<double>(k + 1.0, n - k), 1.0 - alpha / 2.0);
  }
  return ci;
}

namespace {

// log(a / b) that tolerates zero endpoints the way the certificate needs:
// zero numerator drives the ratio's log to -inf, zero denominator to +inf.
double safe_log_ratio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 0.0;
  if (num == 0.0) return -std::numeric_limits<double>::infinity();
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::log(num / den);
}

// Shared certification core: run the channel with the given actual keep
// probability on both inputs, then bound the worst directed log
// likelihood-ratio over the four (input pair) x (output value) cases.
LdpTestResult certify_core(double claimed_eps, double actual_p_keep,
                           std::int64_t trials, std::uint64_t seed,
                           std::uint32_t subtag, double confidence) {
  if (trials < 100000) {
    throw std::invalid_argument("certification needs at least 100000 trials");
  }
  if (!(confidence > 0.9) || !(confidence < 1.0)) {
    throw std::invalid_argument("confidence must lie in (0.9, 1)");
  }
  if (!(claimed_eps >= 0.0) || !std::isfinite(claimed_eps)) {
    throw std::invalid_argument("claimed budget must be non-negative");
  }
  if (!(actual_p_keep >= 0.0) || !(actual_p_keep <= 1.0)) {
    throw std::invalid_argument("keep probability must lie in [0, 1]");
  }

  // Independent streams per (plane, input value).
  std::int64_t zero_outputs_from_zero = 0;  // output 0 on input 0
  std::int64_t zero_outputs_from_one = 0;   // output 0 on input 1
  for (std::int64_t i = 0; i < trials; ++i) {
    const double d0 = trial_draw(seed, kDomainCertify, subtag * 2 + 0, i);
    const double d1 = trial_draw(seed, kDomainCertify, subtag * 2 + 1, i);
    if (d0 < actual_p_keep) ++zero_outputs_from_zero;  // kept 0 -> 0
    if (d1 >= actual_p_keep) ++zero_outputs_from_one;  // flipped 1 -> 0
  }

  // Split the plane's error budget over the two estimated probabilities.
  const double per_side = 1.0 - (1.0 - confidence) / 2.0;
  const BinomialInterval p0 =
      clopper_pearson(zero_outputs_from_zero, trials, per_side);
  const BinomialInterval q0 =
      clopper_pearson(zero_outputs_from_one, trials, per_side);

  const double p0_hat = static_cast<double>(zero_outputs_from_zero) / trials;
  const double q0_hat = static_cast<double>(zero_outputs_from_one) / trials;

  // Directed ratios: P(out|0)/P(out|1) and its inverse, for both outputs.
  const double est = std::max(
      std::abs(safe_log_ratio(p0_hat, q0_hat)),
      std::abs(safe_log_ratio(1.0 - p0_hat, 1.0 - q0_hat)));
  const double lower = std::max({
      safe_log_ratio(p0.lower, q0.upper),
      safe_log_ratio(q0.lower, p0.upper),
      safe_log_ratio(1.0 - p0.upper, 1.0 - q0.lower),
      safe_log_ratio(1.0 - q0.upper, 1.0 - p0.lower),
  });
  const double upper = std::max({
      safe_log_ratio(p0.upper, q0.lower),
      safe_log_ratio(q0.upper, p0.lower),
      safe_log_ratio(1.0 - p0.lower, 1.0 - q0.upper),
      safe_log_ratio(1.0 - q0.lower, 1.0 - p0.upper),
  });

  LdpTestResult result;
  result.claimed_eps = claimed_eps;
  result.log_ratio_estimate = est;
  result.log_ratio_lower = lower;
  result.log_ratio_upper = upper;
  result.trials = trials;
  result.confidence = confidence;
  result.passed = claimed_eps >= lower;
  return result;
}

}  // namespace

LdpTestResult certify_bit_ldp(double eps, std::int64_t trials,
                              const RandomnessSpec& rand, double confidence) {
  const double p_keep = FlipProbabilities::from_epsilon(eps).p_keep;
  return certify_core(eps, p_keep, trials, rand.master_seed, 0xFFFF,
                      confidence);
}

LdpTestResult certify_bit_miscalibrated(double claimed_eps,
                                        double actual_p_keep,
                                        std::int64_t trials,
                                        const RandomnessSpec& rand,
                                        double confidence) {
  return certify_core(claimed_eps, actual_p_keep, trials, rand.master_seed,
                      0xFFFE, confidence);
}

std::vector<LdpTestResult> certify_pixel_pipeline(
    const BudgetAllocation& alloc, std::int64_t trials,
    const RandomnessSpec& rand, double confidence,
    const PlaneOverride* override_plane) {
  alloc.weights.validate();
  if (static_cast<int>(alloc.epsilons.size()) !=
      alloc.weights.channel_count() * 8) {
    throw std::invalid_argument("allocation must hold 8 entries per channel");
  }
  const int plane_count = static_cast<int>(alloc.epsilons.size());
  // Bonferroni: the family-wise error splits evenly over the planes.
  const double per_plane =
      1.0 - (1.0 - confidence) / static_cast<double>(plane_count);

  std::vector<LdpTestResult> results;
  results.reserve(plane_count);
  for (int channel = 0; channel < alloc.channel_count(); ++channel) {
    for (int b = 1; b <= 8; ++b) {
      const double eps = alloc.at(channel, b);
      double p_keep = FlipProbabilities::from_epsilon(eps).p_keep;
      if (override_plane != nullptr && override_plane->channel == channel &&
          override_plane->significance == b) {
        p_keep = override_plane->p_keep;
      }
      const std::uint32_t subtag = static_cast<std::uint32_t>(channel) |
                                   (static_cast<std::uint32_t>(b) << 8);
      LdpTestResult r = certify_core(eps, p_keep, trials, rand.master_seed,
                                     subtag, per_plane);
      r.channel = channel;
      r.significance = b;
      results.push_back(r);
    }
  }
  return results;
}

SweepResult monotone_psnr_sweep(const PixelImage& img,
                                const std::vector<double>& epsilon_totals,
                                int seeds, const RandomnessSpec& rand,
                                bool prune) {
  img.validate();
  if (epsilon_totals.size() < 3) {
    throw std::invalid_argument("sweep needs at least 3 budgets");
  }
  for (std::size_t i = 1; i < epsilon_totals.size(); ++i) {
    if (!(epsilon_totals[i] >= epsilon_totals[i - 1])) {
      throw std::invalid_argument("budgets must be ascending");
    }
  }
  if (seeds < 5) {
    throw std::invalid_argument("sweep needs at least 5 seeds per budget");
  }

  const WeightTable weights = img.channels == 3 ? WeightTable::color_default()
                                                : WeightTable::grayscale();
  SweepResult sweep;
  sweep.epsilon_totals = epsilon_totals;
  for (std::size_t i = 0; i < epsilon_totals.size(); ++i) {
    const BudgetAllocation alloc = allocate(epsilon_totals[i], weights);
    std::vector<double> values;
    values.reserve(seeds);
    for (int s = 0; s < seeds; ++s) {
      const RandomnessSpec child{derive_stream_seed(
          rand.master_seed, (static_cast<std::uint64_t>(i) << 32) |
                                static_cast<std::uint32_t>(s))};
      values.push_back(psnr(img, privatize(img, alloc, child, prune).first));
    }
    double mean = 0.0;
    bool any_inf = false;
    for (double v : values) {
      any_inf = any_inf || std::isinf(v);
      mean += v;
    }
    mean /= seeds;
    double se = 0.0;
    if (any_inf) {
      // Identical-output runs: the sample offers no finite spread.
      mean = std::numeric_limits<double>::infinity();
    } else {
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      var /= (seeds - 1);
      se = std::sqrt(var / seeds);
    }
    sweep.mean_psnr_db.push_back(mean);
    sweep.std_error_db.push_back(se);
  }

  sweep.monotone_within_error = true;
  for (std::size_t i = 1; i < sweep.mean_psnr_db.size(); ++i) {
    const double a = sweep.mean_psnr_db[i - 1];
    const double b = sweep.mean_psnr_db[i];
    if (std::isinf(a) && std::isinf(b)) continue;
    const double pooled = std::sqrt(sweep.std_error_db[i - 1] *
                                        sweep.std_error_db[i - 1] +
                                    sweep.std_error_db[i] * sweep.std_error_db[i]);
    if (b < a - pooled) {
      sweep.monotone_within_error = false;
      break;
    }
  }
  return sweep;
}

PixelImage make_test_pattern(int width, int height, int channels) {
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("test pattern supports 1 or 3 channels");
  }
  PixelImage img = PixelImage::create(
      width, height, channels,
      channels == 3 ? Colorspace::kRgb : Colorspace::kGray);
  // A dark foliage-like scene: gradients and a soft highlight for large-scale
  // structure, plus strong pixel-scale texture. The texture survives the
  // detail-only obfuscation stage, so the privatized output genuinely
  // approaches the input as the budget grows. The green-dominant palette
  // keeps the input's chroma planes close to where obfuscation sends them
  // (clamped near zero), so color fidelity also improves monotonically with
  // the budget instead of favoring the accidental gray of heavy noise.
  const double kTau = 6.283185307179586;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double ny = height > 1 ? static_cast<double>(r) / (height - 1) : 0.0;
      const double nx = width > 1 ? static_cast<double>(c) / (width - 1) : 0.0;
      for (int ch = 0; ch < channels; ++ch) {
        const double base = 0.24 + 0.12 * nx + 0.09 * ny;
        const double dx = nx - 0.6, dy = ny - 0.4;
        const double blob = 0.40 * std::exp(-(dx * dx + dy * dy) / 0.04);
        const double texture =
            0.05 * std::sin(kTau * (6.0 * nx + 4.0 * ny)) +
            0.035 * std::sin(kTau * (13.0 * nx - 7.0 * ny + ch / 3.0)) +
            0.26 * std::sin(kTau * (29.0 * nx + 23.0 * ny + 0.25 * ch)) +
            0.156 * std::sin(kTau * (41.0 * nx - 31.0 * ny + 0.11 + 0.3 * ch));
        double v = base + blob + texture;
        if (channels == 3) {
          v *= ch == 0 ? 0.22 : (ch == 2 ? 0.16 : 1.0);
        } else {
          v *= 0.62;
        }
        v = std::clamp(v, 0.0, 1.0);
        img.at(r, c, ch) = static_cast<std::uint8_t>(std::lround(255.0 * v));
      }
    }
  }
  return img;
}

}  // namespace ldpix
