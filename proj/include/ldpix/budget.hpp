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

#ifndef LDPIX_BUDGET_HPP_
#define LDPIX_BUDGET_HPP_

#include <vector>

#include "ldpix/image.hpp"

namespace ldpix {

// Importance weights driving the privacy-budget split. The weight of plane
// (channel c, significance b) is W = w_c * 2^(b-1): channel importance
// times the numeric contribution of the bit. The defaults mirror how
// strongly each channel shapes perceived quality (luma counts four times
// as much as either chroma plane).
struct WeightTable {
  std::vector<double> channel_weights;  // one entry per channel, all > 0

  static WeightTable color_default() { return WeightTable{{4.0, 1.0, 1.0}}; }
  static WeightTable color(double wy, double wcb, double wcr) {
    return WeightTable{{wy, wcb, wcr}};
  }
  static WeightTable grayscale() { return WeightTable{{1.0}}; }

  int channel_count() const { return static_cast<int>(channel_weights.size()); }

  // W_{c,b} for channel index c (0-based) and significance b in 1..8.
  double weight(int channel, int b) const;

  // All 8 * channel_count() weights, channel-major, b ascending 1..8.
  std::vector<double> flattened() const;

  // Throws std::invalid_argument unless there are 1 or 3 channels and all
  // weights are strictly positive and finite.
  void validate() const;
};

// A per-plane privacy-budget split. epsilons is channel-major with 8
// entries per channel: epsilons[c * 8 + (b - 1)] is the budget of plane
// (c, b). Entries are non-negative and sum to epsilon_total.
struct BudgetAllocation {
  double epsilon_total = 0.0;
  WeightTable weights;
  std::vector<double> epsilons;

  int channel_count() const { return static_cast<int>(epsilons.size()) / 8; }
  double at(int channel, int b) const {
    return epsilons[static_cast<std::size_t>(channel) * 8 + (b - 1)];
  }
  double sum() const;
};

// Splits epsilon_total over arbitrary weights so that sum(w_i / eps_i) is
// minimized subject to sum(eps_i) = epsilon_total: each slot receives
// budget proportional to the square root of its weight. Slots with zero
// weight receive exactly zero budget. epsilon_total = 0 yields all zeros.
// Throws std::invalid_argument on negative epsilon_total, an empty weight
// list, or any negative/non-finite weight.
std::vector<double> allocate_over_weights(double epsilon_total,
                                          const std::vector<double>& weights);

// Same optimum computed without the closed form: an outer bisection over
// the Lagrange multiplier with per-slot Newton root-finding of the
// stationarity condition. Kept deliberately independent of
// allocate_over_weights so the two can cross-check each other. Requires
// epsilon_total > 0 and at least one positive weight; throws
// std::runtime_error if the iteration fails to converge.
std::vector<double> solve_numeric_over_weights(
    double epsilon_total, const std::vector<double>& weights);

// Typed wrappers over the image-shaped weight table (channels x 8 planes).
BudgetAllocation allocate(double epsilon_total, const WeightTable& weights);
BudgetAllocation solve_numeric(double epsilon_total,
                               const WeightTable& weights);

// Objective value sum(w_i / eps_i) over slots with positive weight; used
// by the optimality tests. Infinite when some weighted slot has no budget.
double allocation_objective(const std::vector<double>& weights,
                            const std::vector<double>& epsilons);

}  // namespace ldpix

#endif  // LDPIX_BUDGET_HPP_
