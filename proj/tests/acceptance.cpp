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
//
// End-to-end acceptance gate for the whole pipeline. Each check prints one
// PASS/FAIL line; the process exits non-zero when any check fails. Checks
// with a runtime budget fold the elapsed time into their verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ldpix/analysis.hpp"
#include "ldpix/bitplane.hpp"
#include "ldpix/budget.hpp"
#include "ldpix/cli.hpp"
#include "ldpix/imageio.hpp"
#include "ldpix/mechanism.hpp"
#include "ldpix/random.hpp"
#include "ldpix/verify.hpp"
#include "ldpix/wavelet.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ldpix::PixelImage random_image(int w, int h, int channels, std::mt19937& rng) {
  ldpix::PixelImage img = ldpix::PixelImage::create(
      w, h, channels,
      channels == 3 ? ldpix::Colorspace::kRgb : ldpix::Colorspace::kGray);
  for (auto& s : img.samples) s = static_cast<std::uint8_t>(rng() & 0xFF);
  return img;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ldpix_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// 1. Bit-plane slicing and reconstruction are exact inverses.

bool check_bitplane_exactness() {
  ldpix::PixelImage all = ldpix::PixelImage::create(
      16, 16, 1, ldpix::Colorspace::kGray);
  for (int v = 0; v < 256; ++v) {
    all.samples[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(v);
  }
  if (!(ldpix::reconstruct(ldpix::slice(all)) == all)) return false;

  std::mt19937 rng(101);
  for (int i = 0; i < 1000; ++i) {
    const int w = 1 + static_cast<int>(rng() % 32);
    const int h = 1 + static_cast<int>(rng() % 32);
    const int ch = (rng() % 2 == 0) ? 3 : 1;
    const ldpix::PixelImage img = random_image(w, h, ch, rng);
    if (!(ldpix::reconstruct(ldpix::slice(img)) == img)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2. Wavelet analysis/synthesis roundtrip and energy preservation.

double matrix_energy(const ldpix::Matrix& m) {
  double e = 0.0;
  for (double v : m.data) e += v * v;
  return e;
}

bool check_wavelet_roundtrip() {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> value(-100.0, 155.0);
  for (int i = 0; i < 50; ++i) {
    const int rows = 1 + static_cast<int>(rng() % 64);
    const int cols = 1 + static_cast<int>(rng() % 64);
    ldpix::Matrix m(rows, cols);
    for (double& v : m.data) v = value(rng);

    const ldpix::SubbandSet bands = ldpix::haar_dwt(m);
    const ldpix::Matrix back = ldpix::haar_idwt(bands);
    if (back.rows != rows || back.cols != cols) return false;
    for (std::size_t k = 0; k < m.data.size(); ++k) {
      if (std::abs(back.data[k] - m.data[k]) > 1e-9) return false;
    }

    // The orthonormal transform preserves energy exactly on even shapes
    // (odd shapes are padded, which adds energy by construction).
    if (rows % 2 == 0 && cols % 2 == 0) {
      const double before = matrix_energy(m);
      const double after = matrix_energy(bands.ll) + matrix_energy(bands.lh) +
                           matrix_energy(bands.hl) + matrix_energy(bands.hh);
      if (std::abs(after - before) > 1e-6 * std::max(before, 1.0)) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. Closed-form allocation agrees with the independent numeric solver.

bool check_budget_allocation() {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> log_weight(std::log(1e-3),
                                                    std::log(1e3));
  std::uniform_real_distribution<double> log_total(std::log(0.1),
                                                   std::log(100.0));
  for (int table = 0; table < 100; ++table) {
    const int n = 1 + static_cast<int>(rng() % 32);
    std::vector<double> weights(static_cast<std::size_t>(n));
    for (double& w : weights) w = std::exp(log_weight(rng));
    const double total = std::exp(log_total(rng));

    const std::vector<double> closed =
        ldpix::allocate_over_weights(total, weights);
    const std::vector<double> numeric =
        ldpix::solve_numeric_over_weights(total, weights);

    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(closed[static_cast<std::size_t>(i)] -
                   numeric[static_cast<std::size_t>(i)]) > 1e-6) {
        return false;
      }
      sum += closed[static_cast<std::size_t>(i)];
    }
    if (std::abs(sum - total) > 1e-9) return false;

    // Stationarity: W / eps^2 is one shared constant across funded slots.
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = closed[static_cast<std::size_t>(i)];
      const double ratio = weights[static_cast<std::size_t>(i)] / (e * e);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    if ((hi - lo) / hi > 1e-6) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. Statistical certification of every plane, plus a negative control.

bool check_certification() {
  const ldpix::BudgetAllocation alloc =
      ldpix::allocate(20.0, ldpix::WeightTable::color_default());
  const std::vector<ldpix::LdpTestResult> results =
      ldpix::certify_pixel_pipeline(alloc, 1000000, ldpix::RandomnessSpec{404},
                                    0.999);
  if (results.size() != 24) return false;
  for (const ldpix::LdpTestResult& r : results) {
    if (!r.passed) {
      std::printf("        plane channel %d bit %d rejected: lower bound "
                  "%.6f vs claim %.6f\n",
                  r.channel, r.significance, r.log_ratio_lower, r.claimed_eps);
      return false;
    }
  }

  // A channel keeping bits with probability 0.9 while claiming ln 3 must
  // be caught.
  const ldpix::LdpTestResult bad = ldpix::certify_bit_miscalibrated(
      std::log(3.0), 0.9, 1000000, ldpix::RandomnessSpec{404}, 0.999);
  return !bad.passed;
}

// ---------------------------------------------------------------------------
// 5. Exact TV never exceeds the closed-form bound; equality at one bit.

bool check_tv_bound() {
  std::mt19937 rng(505);
  std::uniform_real_distribution<double> eps_value(0.05, 2.5);
  for (int list = 0; list < 50; ++list) {
    const int d = 1 + list % 4;  // covers 1..4 bits evenly
    std::vector<double> eps(static_cast<std::size_t>(d));
    double total = 0.0;
    for (double& e : eps) {
      e = eps_value(rng);
      total += e;
    }
    const double bound = ldpix::tv_bound(total);
    const unsigned values = 1u << d;
    for (unsigned x = 0; x < values; ++x) {
      for (unsigned y = 0; y < values; ++y) {
        const double tv = ldpix::exact_tv_reduced(eps, x, y);
        if (tv > bound + 1e-12) return false;
      }
    }
    if (d == 1 &&
        std::abs(ldpix::exact_tv_reduced(eps, 0, 1) - bound) > 1e-12) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 6. Block-granularity conversion figures.

bool check_block_conversion() {
  const double pixel_eps = ldpix::blocklevel_to_pixel_epsilon(0.5, 8, 8, 3, 1);
  if (pixel_eps != 94.5) return false;
  return std::abs(pixel_eps / 20.0 - 4.725) < 1e-12;
}

// ---------------------------------------------------------------------------
// 7. Mean quality is monotone in the budget on a synthetic photo.

bool check_psnr_monotonicity() {
  const ldpix::PixelImage img = ldpix::make_test_pattern(112, 112, 3);
  const ldpix::SweepResult sweep = ldpix::monotone_psnr_sweep(
      img, {1.0, 2.4, 5.2, 12.0, 20.0, 32.0, 58.0}, 10,
      ldpix::RandomnessSpec{424242}, /*prune=*/true);
  if (!sweep.monotone_within_error) {
    for (std::size_t i = 0; i < sweep.mean_psnr_db.size(); ++i) {
      std::printf("        budget %6.1f -> %.3f dB (se %.3f)\n",
                  sweep.epsilon_totals[i], sweep.mean_psnr_db[i],
                  sweep.std_error_db[i]);
    }
  }
  return sweep.monotone_within_error;
}

// ---------------------------------------------------------------------------
// 8. Outputs carry zero container overhead: same shape, same bit depth.

bool check_zero_overhead() {
  const fs::path in_dir = scratch_dir("overhead_in");
  const fs::path out_dir = scratch_dir("overhead_out");
  std::mt19937 rng(808);

  ldpix::RunConfig config;
  const std::vector<std::pair<int, int>> sizes = {
      {112, 112}, {64, 48}, {33, 77}, {1, 1}, {31, 2}, {100, 101}};
  int index = 0;
  for (const auto& [w, h] : sizes) {
    for (int ch : {1, 3}) {
      const ldpix::PixelImage img = random_image(w, h, ch, rng);
      const fs::path path =
          in_dir / ("fixture" + std::to_string(index++) + ".png");
      ldpix::write_image(img, path.string());
      config.inputs.push_back(path.string());
    }
  }
  config.output_dir = out_dir.string();
  config.seed = 88;

  std::ostringstream out, err;
  if (ldpix::run_privatize(config, out, err) != ldpix::kExitOk) return false;

  for (const std::string& input : config.inputs) {
    const fs::path output = out_dir / fs::path(input).filename();
    const ldpix::PixelImage before = ldpix::read_image(input);
    const ldpix::PixelImage after = ldpix::read_image(output.string());
    if (after.width != before.width || after.height != before.height ||
        after.channels != before.channels) {
      return false;
    }
    // PNG IHDR: byte 24 is the bit depth, byte 25 the color type.
    const std::string in_bytes = read_file_bytes(input);
    const std::string out_bytes = read_file_bytes(output);
    if (in_bytes.size() < 26 || out_bytes.size() < 26) return false;
    if (in_bytes[24] != 8 || out_bytes[24] != 8) return false;
    if (in_bytes[25] != out_bytes[25]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 9. Single-image latency stays within the regression gate.

bool check_throughput(double* median_ms) {
  const ldpix::PixelImage img = ldpix::make_test_pattern(112, 112, 3);
  const ldpix::BudgetAllocation alloc =
      ldpix::allocate(20.0, ldpix::WeightTable::color_default());
  std::vector<double> times;
  for (int run = 0; run < 5; ++run) {
    const auto start = Clock::now();
    const auto result = ldpix::privatize(
        img, alloc, ldpix::RandomnessSpec{static_cast<std::uint64_t>(run)},
        /*prune=*/true, /*workers=*/1);
    times.push_back(seconds_since(start) * 1000.0);
    if (result.first.width != 112) return false;  // keep the call observable
  }
  std::sort(times.begin(), times.end());
  *median_ms = times[2];
  return *median_ms < 50.0;
}

// ---------------------------------------------------------------------------
// 10. Worker count never changes batch output bytes.

bool check_parallel_determinism() {
  const fs::path in_dir = scratch_dir("parallel_in");
  std::mt19937 rng(1010);
  std::vector<std::string> inputs;
  for (int i = 0; i < 20; ++i) {
    const int w = 16 + static_cast<int>(rng() % 48);
    const int h = 16 + static_cast<int>(rng() % 48);
    const int ch = (i % 2 == 0) ? 3 : 1;
    const ldpix::PixelImage img = random_image(w, h, ch, rng);
    const fs::path path = in_dir / ("batch" + std::to_string(i) + ".png");
    ldpix::write_image(img, path.string());
    inputs.push_back(path.string());
  }

  auto run = [&](const std::string& tag, int workers, fs::path* dir) {
    *dir = scratch_dir("parallel_out_" + tag);
    ldpix::RunConfig config;
    config.inputs = inputs;
    config.output_dir = dir->string();
    config.seed = 777;
    config.workers = workers;
    std::ostringstream out, err;
    return ldpix::run_privatize(config, out, err) == ldpix::kExitOk;
  };

  fs::path serial_dir, pooled_dir;
  if (!run("serial", 1, &serial_dir)) return false;
  if (!run("pooled", 8, &pooled_dir)) return false;

  for (int i = 0; i < 20; ++i) {
    for (const std::string& suffix : {std::string(".png"),
                                      std::string(".report.json")}) {
      const std::string name = "batch" + std::to_string(i) + suffix;
      const std::string a = read_file_bytes(serial_dir / name);
      const std::string b = read_file_bytes(pooled_dir / name);
      if (a.empty() || a != b) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

struct Criterion {
  const char* name;
  bool ok;
  double seconds;
};

}  // namespace

int main() {
  std::vector<Criterion> results;
  double median_ms = 0.0;

  const auto timed = [&](const char* name, auto&& fn, double budget_s) {
    const auto start = Clock::now();
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      std::printf("        exception: %s\n", e.what());
      ok = false;
    }
    const double elapsed = seconds_since(start);
    if (budget_s > 0.0 && elapsed >= budget_s) ok = false;
    results.push_back({name, ok, elapsed});
    std::printf("[%2zu/10] %-46s %s (%.2fs)\n", results.size(), name,
                ok ? "PASS" : "FAIL", elapsed);
    std::fflush(stdout);
  };

  timed("bit-plane slice/reconstruct exactness", check_bitplane_exactness,
        1.0);
  timed("wavelet roundtrip and energy preservation", check_wavelet_roundtrip,
        1.0);
  timed("budget closed form vs numeric solver", check_budget_allocation, 10.0);
  timed("per-plane certification with negative control", check_certification,
        120.0);
  timed("exact TV within the closed-form bound", check_tv_bound, 10.0);
  timed("block-granularity conversion figures", check_block_conversion, 0.0);
  timed("mean quality monotone in the budget", check_psnr_monotonicity, 60.0);
  timed("zero container overhead on the fixture corpus", check_zero_overhead,
        0.0);
  timed("single-image latency under 50 ms",
        [&] { return check_throughput(&median_ms); }, 0.0);
  timed("batch outputs identical across worker counts",
        check_parallel_determinism, 0.0);

  if (median_ms > 0.0) {
    std::printf("        median privatization latency: %.2f ms\n", median_ms);
  }

  int failures = 0;
  for (const Criterion& c : results) failures += c.ok ? 0 : 1;
  std::printf("%d/10 acceptance criteria passed\n",
              10 - failures);
  return failures == 0 ? 0 : 1;
}
