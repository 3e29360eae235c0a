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

#ifndef LDPIX_IMAGEIO_HPP_
#define LDPIX_IMAGEIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldpix/analysis.hpp"
#include "ldpix/image.hpp"

namespace ldpix {

// What to do with an alpha channel on input. Privatized alpha would be
// noise and silently keeping it would leak unprivatized structure, so the
// default refuses it; kStrip drops it after compositing is the caller's
// problem.
enum class AlphaPolicy { kReject, kStrip };

// Reads an 8-bit PNG, PPM (P6), or PGM (P5) file into an RGB or GRAY
// image. The format is detected from the file's magic bytes. Throws
// std::runtime_error with an actionable message for missing files, broken
// streams, 16-bit inputs, and lossy formats (JPEG is rejected outright:
// its decode is not bit-exact, so privatized bits would not survive).
PixelImage read_image(const std::string& path,
                      AlphaPolicy alpha = AlphaPolicy::kReject);

// Writes PNG / PPM / PGM according to the file extension (.png, .ppm,
// .pgm). PPM requires a 3-channel image and PGM a single-channel one; PNG
// takes both. The encodings are lossless and carry no metadata beyond
// the standard headers, and identical pixel content always produces
// identical bytes. Throws std::invalid_argument for extension/shape
// mismatches and std::runtime_error for I/O failures.
void write_image(const PixelImage& img, const std::string& path);

// JSON document describing one privatization run: the machine-readable
// twin of PrivacyReport. Serialization is stable (fixed key order), and
// parsing is strict: unknown keys are rejected, and the per-plane budgets
// must sum to epsilon_total within 1e-9.
struct ReportDocument {
  struct Entry {
    std::string channel;  // "Y", "Cb", "Cr", or "GRAY"
    int bit = 0;          // significance b in 1..8
    double epsilon = 0.0;
    double p_keep = 0.0;
  };

  int version = 1;
  double epsilon_total = 0.0;
  std::vector<std::pair<std::string, double>> weights;  // name -> weight
  std::vector<Entry> allocation;
  double tv_bound = 0.0;
  double advantage_bound = 0.0;
  std::optional<double> psnr_db;  // +inf allowed; absent for dry runs
  bool prune = true;
  std::optional<std::uint64_t> seed;  // absent for dry runs

  static ReportDocument from_report(const PrivacyReport& report,
                                    std::optional<std::uint64_t> seed);

  std::string to_json() const;

  // Throws std::runtime_error on malformed JSON, unknown keys, or invariant
  // violations.
  static ReportDocument from_json(const std::string& text);
};

}  // namespace ldpix

#endif  // LDPIX_IMAGEIO_HPP_
