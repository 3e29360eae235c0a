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

#include "ldpix/color.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace ldpix {
namespace {

// Round half away from zero, then clamp to the 8-bit range.
std::uint8_t quantize(double x) {
  const long v = std::lround(x);
  if (v < 0) return 0;
  if (v > 255) return 255;
  return static_cast<std::uint8_t>(v);
}

}  // namespace

PixelImage rgb_to_ycbcr(const PixelImage& img) {
  img.validate();
  if (img.colorspace != Colorspace::kRgb) {
    throw std::invalid_argument("rgb_to_ycbcr expects an RGB image");
  }
  PixelImage out = img;
  out.colorspace = Colorspace::kYCbCr;
  const std::size_t pixels =
      static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < pixels; ++i) {
    const double r = img.samples[3 * i + 0];
    const double g = img.samples[3 * i + 1];
    const double b = img.samples[3 * i + 2];
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    const double cb = 128.0 + (b - y) / 1.772;
    const double cr = 128.0 + (r - y) / 1.402;
    out.samples[3 * i + 0] = quantize(y);
    out.samples[3 * i + 1] = quantize(cb);
    out.samples[3 * i + 2] = quantize(cr);
  }
  return out;
}

PixelImage ycbcr_to_rgb(const PixelImage& img) {
  img.validate();
  if (img.colorspace != Colorspace::kYCbCr) {
    throw std::invalid_argument("ycbcr_to_rgb expects a YCbCr image");
  }
  PixelImage out = img;
  out.colorspace = Colorspace::kRgb;
  const std::size_t pixels =
      static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < pixels; ++i) {
    const double y = img.samples[3 * i + 0];
    const double cb = img.samples[3 * i + 1];
    const double cr = img.samples[3 * i + 2];
    const double r = y + 1.402 * (cr - 128.0);
    const double b = y + 1.772 * (cb - 128.0);
    const double g = (y - 0.299 * r - 0.114 * b) / 0.587;
    out.samples[3 * i + 0] = quantize(r);
    out.samples[3 * i + 1] = quantize(g);
    out.samples[3 * i + 2] = quantize(b);
  }
  return out;
}

}  // namespace ldpix
