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

#include "ldpix/image.hpp"

#include <stdexcept>
#include <string>

namespace ldpix {

const char* colorspace_name(Colorspace cs) {
  switch (cs) {
    case Colorspace::kRgb:
      return "RGB";
    case Colorspace::kYCbCr:
      return "YCbCr";
    case Colorspace::kGray:
      return "GRAY";
  }
  return "?";
}

const char* channel_name(Colorspace cs, int channel) {
  static const char* kRgbNames[] = {"R", "G", "B"};
  static const char* kYccNames[] = {"Y", "Cb", "Cr"};
  switch (cs) {
    case Colorspace::kRgb:
      return channel >= 0 && channel < 3 ? kRgbNames[channel] : "?";
    case Colorspace::kYCbCr:
      return channel >= 0 && channel < 3 ? kYccNames[channel] : "?";
    case Colorspace::kGray:
      return channel == 0 ? "GRAY" : "?";
  }
  return "?";
}

PixelImage PixelImage::create(int width, int height, int channels,
                              Colorspace colorspace) {
  PixelImage img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.colorspace = colorspace;
  if (width > 0 && height > 0 && channels > 0) {
    img.samples.assign(static_cast<std::size_t>(width) * height * channels, 0);
  }
  img.validate();
  return img;
}

void PixelImage::validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw std::invalid_argument("image must have 1 or 3 channels, got " +
                                std::to_string(channels));
  }
  const bool gray = colorspace == Colorspace::kGray;
  if (gray != (channels == 1)) {
    throw std::invalid_argument(
        std::string("colorspace ") + colorspace_name(colorspace) +
        " does not match channel count " + std::to_string(channels));
  }
  const std::size_t expected =
      static_cast<std::size_t>(width) * height * channels;
  if (samples.size() != expected) {
    throw std::invalid_argument(
        "sample buffer holds " + std::to_string(samples.size()) +
        " bytes, expected " + std::to_string(expected));
  }
}

bool operator==(const PixelImage& a, const PixelImage& b) {
  return a.width == b.width && a.height == b.height &&
         a.channels == b.channels && a.colorspace == b.colorspace &&
         a.samples == b.samples;
}

}  // namespace ldpix
