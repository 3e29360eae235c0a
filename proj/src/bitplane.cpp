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

#include "ldpix/bitplane.hpp"

#include <stdexcept>
#include <string>

namespace ldpix {

BitPlaneStack slice(const PixelImage& img) {
  img.validate();
  BitPlaneStack stack;
  stack.width = img.width;
  stack.height = img.height;
  stack.channels = img.channels;
  stack.colorspace = img.colorspace;
  stack.planes.assign(static_cast<std::size_t>(img.channels) * 8,
                      BitMatrix(img.height, img.width));
  for (int ch = 0; ch < img.channels; ++ch) {
    for (int b = 1; b <= 8; ++b) {
      BitMatrix& plane = stack.plane(ch, b);
      for (int r = 0; r < img.height; ++r) {
        for (int c = 0; c < img.width; ++c) {
          plane.set(r, c, (img.at(r, c, ch) >> (b - 1)) & 1u);
        }
      }
    }
  }
  return stack;
}

PixelImage reconstruct(const BitPlaneStack& stack) {
  if (stack.width <= 0 || stack.height <= 0 ||
      (stack.channels != 1 && stack.channels != 3)) {
    throw std::invalid_argument("bit-plane stack has invalid dimensions");
  }
  if (stack.planes.size() != static_cast<std::size_t>(stack.channels) * 8) {
    throw std::invalid_argument(
        "bit-plane stack holds " + std::to_string(stack.planes.size()) +
        " planes, expected " + std::to_string(stack.channels * 8));
  }
  for (const BitMatrix& p : stack.planes) {
    if (p.rows() != stack.height || p.cols() != stack.width) {
      throw std::invalid_argument("bit-plane dimensions disagree with stack");
    }
  }
  PixelImage img = PixelImage::create(stack.width, stack.height,
                                      stack.channels, stack.colorspace);
  for (int ch = 0; ch < stack.channels; ++ch) {
    for (int b = 1; b <= 8; ++b) {
      const BitMatrix& plane = stack.plane(ch, b);
      const std::uint8_t weight = static_cast<std::uint8_t>(1u << (b - 1));
      for (int r = 0; r < stack.height; ++r) {
        for (int c = 0; c < stack.width; ++c) {
          if (plane.get(r, c)) img.at(r, c, ch) += weight;
        }
      }
    }
  }
  return img;
}

}  // namespace ldpix
