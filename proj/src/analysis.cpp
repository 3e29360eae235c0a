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

#include "ldpix/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ldpix/mechanism.hpp"

namespace ldpix {

double tv_bound(double eps) {
  if (!(eps >= 0.0)) {
    throw std::invalid_argument("privacy budget must be non-negative");
  }
  // (e^eps - 1)/(e^eps + 1) == tanh(eps / 2); the tanh form never
  // overflows and degrades gracefully to 1 for large budgets.
  return std::tanh(eps / 2.0);
}

double advantage_bound(double eps) { return tv_bound(eps) / 2.0; }

double exact_tv_reduced(const std::vector<double>& eps_bits, unsigned x,
                        unsigned x_prime) {
  const std::size_t d = eps_bits.size();
  if (d < 1 || d > 8) {
    throw std::invalid_argument("per-bit budget list must have 1..8 entries");
  }
  for (double e : eps_bits) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument("per-bit budgets must be non-negative");
    }
  }
  const unsigned limit = 1u << d;
  if (x >= limit || x_prime >= limit) {
    throw std::invalid_argument("sample value does not fit in the bit depth");
  }

  // P(output | input) factorizes over bits; enumerate all 2^d outputs.
  std::vector<double> keep(d);
  for (std::size_t i = 0; i < d; ++i) {
    keep[i] = FlipProbabilities::from_epsilon(eps_bits[i]).p_keep;
  }
  double total = 0.0;
  for (unsigned out = 0; out < limit; ++out) {
    double px = 1.0, pq = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      // eps_bits is most-significant-first; bit i weighs 2^(d-1-i).
      const unsigned mask = 1u << (d - 1 - i);
      const bool same_x = ((out ^ x) & mask) == 0;
      const bool same_q = ((out ^ x_prime) & mask) == 0;
      px *= same_x ? keep[i] : 1.0 - keep[i];
      pq *= same_q ? keep[i] : 1.0 - keep[i];
    }
    total += std::abs(px - pq);
  }
  return total / 2.0;
}

double blocklevel_to_pixel_epsilon(double per_coeff_eps, int block_w,
                                   int block_h, int channels,
                                   int removed_coeffs) {
  if (block_w <= 0 || block_h <= 0 || channels <= 0) {
    throw std::invalid_argument("block shape and channel count must be positive");
  }
  if (removed_coeffs < 0 || removed_coeffs >= block_w * block_h) {
    throw std::invalid_argument(
        "removed coefficient count must lie in [0, block area)");
  }
  if (!(per_coeff_eps >= 0.0) || !std::isfinite(per_coeff_eps)) {
    throw std::invalid_argument("per-coefficient budget must be non-negative");
  }
  const double kept = static_cast<double>(block_w) * block_h - removed_coeffs;
  return kept * channels * per_coeff_eps;
}

double psnr(const PixelImage& a, const PixelImage& b) {
  a.validate();
  b.validate();
  if (a.width != b.width || a.height != b.height || a.channels != b.channels) {
    throw std::invalid_argument("psnr requires images of identical shape");
  }
  double se = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d =
        static_cast<double>(a.samples[i]) - static_cast<double>(b.samples[i]);
    se += d * d;
  }
  if (se == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = se / static_cast<double>(a.samples.size());
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace ldpix
