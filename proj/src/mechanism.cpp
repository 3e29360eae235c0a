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

#include "ldpix/mechanism.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ldpix/color.hpp"
#include "ldpix/wavelet.hpp"

namespace ldpix {

FlipProbabilities FlipProbabilities::from_epsilon(double eps) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("privacy budget must be non-negative and finite");
  }
  FlipProbabilities p;
  p.p_flip = 1.0 / (1.0 + std::exp(eps));
  p.p_keep = 1.0 - p.p_flip;
  return p;
}

int rr_bit(int bit, double eps, double draw) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("randomized response takes a binary input");
  }
  if (!(draw >= 0.0) || !(draw < 1.0)) {
    throw std::invalid_argument("draw must lie in [0, 1)");
  }
  const FlipProbabilities p = FlipProbabilities::from_epsilon(eps);
  return draw < p.p_keep ? bit : 1 - bit;
}

namespace {

// Applies randomized response to one whole plane. Columns advance in
// pairs because one generator block yields two draws.
void randomize_plane(BitMatrix& plane, double p_keep, std::uint64_t seed,
                     int channel, int significance) {
  const std::uint32_t tag = static_cast<std::uint32_t>(channel) |
                            (static_cast<std::uint32_t>(significance) << 8);
  const int rows = plane.rows();
  const int cols = plane.cols();
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; c += 2) {
      const std::array<double, 2> draw = unit_pair(
          seed, static_cast<std::uint32_t>(c >> 1),
          static_cast<std::uint32_t>(r), tag, kDomainImageBits);
      if (draw[0] >= p_keep) plane.flip(r, c);
      if (c + 1 < cols && draw[1] >= p_keep) plane.flip(r, c + 1);
    }
  }
}

}  // namespace

std::pair<PixelImage, PrivacyReport> privatize(const PixelImage& img,
                                               const BudgetAllocation& alloc,
                                               const RandomnessSpec& rand,
                                               bool prune, int workers) {
  img.validate();
  alloc.weights.validate();
  if (alloc.channel_count() != img.channels ||
      alloc.weights.channel_count() != img.channels) {
    throw std::invalid_argument("budget allocation does not cover the image's channels");
  }
  if (static_cast<int>(alloc.epsilons.size()) != img.channels * 8) {
    throw std::invalid_argument("budget allocation must hold 8 entries per channel");
  }
  for (double e : alloc.epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument("per-plane budgets must be non-negative");
    }
  }
  if (workers < 1) {
    throw std::invalid_argument("worker count must be at least 1");
  }

  const bool convert = img.colorspace == Colorspace::kRgb;
  PixelImage work = convert ? rgb_to_ycbcr(img) : img;
  if (prune) work = perceptual_obfuscate(work);

  BitPlaneStack stack = slice(work);

  // Planes are independent work items; any partition of them yields the
  // same output because every draw is addressed, not sequential.
  const int plane_count = img.channels * 8;
  auto run_plane = [&](int index) {
    const int channel = index / 8;
    const int significance = index % 8 + 1;
    const double eps = alloc.at(channel, significance);
    const double p_keep = FlipProbabilities::from_epsilon(eps).p_keep;
    randomize_plane(stack.plane(channel, significance), p_keep,
                    rand.master_seed, channel, significance);
  };
  if (workers == 1 || plane_count == 1) {
    for (int i = 0; i < plane_count; ++i) run_plane(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int n = workers < plane_count ? workers : plane_count;
    pool.reserve(n);
    for (int t = 0; t < n; ++t) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < plane_count;
             i = next.fetch_add(1)) {
          run_plane(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  PixelImage out = reconstruct(stack);
  if (convert) out = ycbcr_to_rgb(out);

  PrivacyReport report;
  report.channel_weights = alloc.weights.channel_weights;
  report.prune = prune;
  report.allocation.reserve(plane_count);
  double total = 0.0;
  for (int channel = 0; channel < img.channels; ++channel) {
    for (int b = 1; b <= 8; ++b) {
      PlaneBudget entry;
      entry.channel = channel;
      entry.significance = b;
      entry.epsilon = alloc.at(channel, b);
      entry.p_keep = FlipProbabilities::from_epsilon(entry.epsilon).p_keep;
      report.allocation.push_back(entry);
      total += entry.epsilon;
    }
  }
  report.epsilon_total = total;
  report.tv_bound = tv_bound(total);
  report.advantage_bound = advantage_bound(total);
  report.psnr_db = psnr(img, out);
  return {std::move(out), std::move(report)};
}

double empirical_flip_rate(double eps, std::int64_t trials,
                           const RandomnessSpec& rand) {
  if (trials < 10000) {
    throw std::invalid_argument("flip-rate estimation needs at least 10000 trials");
  }
  const double p_keep = FlipProbabilities::from_epsilon(eps).p_keep;
  std::int64_t flips = 0;
  for (std::int64_t i = 0; i < trials; ++i) {
    if (trial_draw(rand.master_seed, kDomainTrials, 0, i) >= p_keep) ++flips;
  }
  return static_cast<double>(flips) / static_cast<double>(trials);
}

}  // namespace ldpix
