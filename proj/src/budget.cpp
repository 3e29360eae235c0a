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

#include "ldpix/budget.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ldpix {

double WeightTable::weight(int channel, int b) const {
  return channel_weights[channel] * static_cast<double>(1u << (b - 1));
}

std::vector<double> WeightTable::flattened() const {
  std::vector<double> w;
  w.reserve(channel_weights.size() * 8);
  for (double wc : channel_weights) {
    for (int b = 1; b <= 8; ++b) {
      w.push_back(wc * static_cast<double>(1u << (b - 1)));
    }
  }
  return w;
}

void WeightTable::validate() const {
  if (channel_weights.size() != 1 && channel_weights.size() != 3) {
    throw std::invalid_argument("weight table must cover 1 or 3 channels");
  }
  for (double wc : channel_weights) {
    if (!(wc > 0.0) || !std::isfinite(wc)) {
      throw std::invalid_argument(
          "channel weights must be strictly positive and finite");
    }
  }
}

double BudgetAllocation::sum() const {
  double s = 0.0;
  for (double e : epsilons) s += e;
  return s;
}

namespace {

void check_weights(double epsilon_total, const std::vector<double>& weights) {
  if (!(epsilon_total >= 0.0) || !std::isfinite(epsilon_total)) {
    throw std::invalid_argument("total budget must be non-negative and finite");
  }
  if (weights.empty()) {
    throw std::invalid_argument("weight list must not be empty");
  }
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(
          "weights must be non-negative and finite, got " + std::to_string(w));
    }
  }
}

}  // namespace

std::vector<double> allocate_over_weights(double epsilon_total,
                                          const std::vector<double>& weights) {
  check_weights(epsilon_total, weights);
  std::vector<double> eps(weights.size(), 0.0);
  if (epsilon_total == 0.0) return eps;

  double denom = 0.0;
  for (double w : weights) denom += std::sqrt(w);
  if (denom == 0.0) {
    throw std::invalid_argument("at least one weight must be positive");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    eps[i] = epsilon_total * std::sqrt(weights[i]) / denom;
  }
  return eps;
}

std::vector<double> solve_numeric_over_weights(
    double epsilon_total, const std::vector<double>& weights) {
  check_weights(epsilon_total, weights);
  if (!(epsilon_total > 0.0)) {
    throw std::invalid_argument("numeric solver requires a positive budget");
  }
  bool any_positive = false;
  for (double w : weights) any_positive = any_positive || w > 0.0;
  if (!any_positive) {
    throw std::invalid_argument("at least one weight must be positive");
  }

  // Stationarity of the Lagrangian of  min sum(w_i / e_i)  s.t.
  // sum(e_i) = E  gives  lambda = w_i / e_i^2  for every funded slot.
  // For a trial multiplier, recover each slot's budget by Newton on
  // g(e) = lambda * e^2 - w  (monotone for e > 0), then bisect the
  // multiplier until the budgets exhaust E. Spent budget decreases
  // strictly in lambda, so the bracket below always closes.
  auto slot_budget = [&](double lambda, double w) {
    if (w == 0.0) return 0.0;
    double e = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double g = lambda * e * e - w;
      if (std::abs(g) <= 1e-15 * w) break;
      e -= g / (2.0 * lambda * e);
    }
    return e;
  };
  auto spent = [&](double lambda) {
    double s = 0.0;
    for (double w : weights) s += slot_budget(lambda, w);
    return s;
  };

  double lo = 1.0, hi = 1.0;
  int guard = 0;
  while (spent(lo) < epsilon_total) {
    lo /= 16.0;
    if (++guard > 700) {
      throw std::runtime_error("budget solver failed to bracket (low side)");
    }
  }
  guard = 0;
  while (spent(hi) > epsilon_total) {
    hi *= 16.0;
    if (++guard > 700) {
      throw std::runtime_error("budget solver failed to bracket (high side)");
    }
  }

  double mid = std::sqrt(lo * hi);
  for (int it = 0; it < 500; ++it) {
    mid = std::sqrt(lo * hi);
    const double s = spent(mid);
    if (std::abs(s - epsilon_total) <= 1e-13 * epsilon_total) break;
    if (s > epsilon_total) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (it == 499) {
      throw std::runtime_error("budget solver failed to converge");
    }
  }

  std::vector<double> eps(weights.size(), 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    eps[i] = slot_budget(mid, weights[i]);
  }
  return eps;
}

namespace {

BudgetAllocation make_allocation(double epsilon_total,
                                 const WeightTable& weights,
                                 std::vector<double> epsilons) {
  BudgetAllocation alloc;
  alloc.epsilon_total = epsilon_total;
  alloc.weights = weights;
  alloc.epsilons = std::move(epsilons);
  return alloc;
}

}  // namespace

BudgetAllocation allocate(double epsilon_total, const WeightTable& weights) {
  weights.validate();
  return make_allocation(
      epsilon_total, weights,
      allocate_over_weights(epsilon_total, weights.flattened()));
}

BudgetAllocation solve_numeric(double epsilon_total,
                               const WeightTable& weights) {
  weights.validate();
  return make_allocation(
      epsilon_total, weights,
      solve_numeric_over_weights(epsilon_total, weights.flattened()));
}

double allocation_objective(const std::vector<double>& weights,
                            const std::vector<double>& epsilons) {
  if (weights.size() != epsilons.size()) {
    throw std::invalid_argument("weights and budgets must align");
  }
  double obj = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] == 0.0) continue;
    if (epsilons[i] <= 0.0) return std::numeric_limits<double>::infinity();
    obj += weights[i] / epsilons[i];
  }
  return obj;
}

}  // namespace ldpix
