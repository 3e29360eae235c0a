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

#ifndef LDPIX_IMAGE_HPP_
#define LDPIX_IMAGE_HPP_

#include <cstdint>
#include <vector>

namespace ldpix {

// Colorspace tag carried by every image. GRAY images have exactly one
// channel; RGB and YCbCr images have exactly three.
enum class Colorspace { kRgb, kYCbCr, kGray };

const char* colorspace_name(Colorspace cs);

// Channel label used in reports ("Y", "Cb", "Cr", "GRAY", ...).
const char* channel_name(Colorspace cs, int channel);

// 8-bit raster image, row-major with interleaved channels. The sample for
// (row, col, channel) lives at ((row * width) + col) * channels + channel.
struct PixelImage {
  int width = 0;
  int height = 0;
  int channels = 0;
  Colorspace colorspace = Colorspace::kGray;
  std::vector<std::uint8_t> samples;

  static PixelImage create(int width, int height, int channels,
                           Colorspace colorspace);

  std::uint8_t& at(int row, int col, int channel) {
    return samples[(static_cast<std::size_t>(row) * width + col) * channels +
                   channel];
  }
  std::uint8_t at(int row, int col, int channel) const {
    return samples[(static_cast<std::size_t>(row) * width + col) * channels +
                   channel];
  }
  std::size_t sample_count() const { return samples.size(); }

  // Throws std::invalid_argument when dimensions, channel count, colorspace
  // tag, and buffer size do not agree.
  void validate() const;
};

bool operator==(const PixelImage& a, const PixelImage& b);

}  // namespace ldpix

#endif  // LDPIX_IMAGE_HPP_
