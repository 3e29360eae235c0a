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

#ifndef LDPIX_BITPLANE_HPP_
#define LDPIX_BITPLANE_HPP_

#include <cstdint>
#include <vector>

#include "ldpix/image.hpp"

namespace ldpix {

// Packed binary matrix: one bit per entry, 64 entries per word, row-major.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        words_((static_cast<std::size_t>(rows) * cols + 63) / 64, 0) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool get(int r, int c) const {
    const std::size_t i = static_cast<std::size_t>(r) * cols_ + c;
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(int r, int c, bool v) {
    const std::size_t i = static_cast<std::size_t>(r) * cols_ + c;
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(int r, int c) {
    const std::size_t i = static_cast<std::size_t>(r) * cols_ + c;
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && words_ == o.words_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint64_t> words_;
};

// The eight binary planes of every channel of an 8-bit image. Planes are
// indexed by significance b in 1..8: plane b holds bit (b-1) of each
// sample, so b = 8 is the most significant plane and flipping one of its
// bits moves the reconstructed sample by 2^(b-1) = 128.
struct BitPlaneStack {
  int width = 0;
  int height = 0;
  int channels = 0;
  Colorspace colorspace = Colorspace::kGray;
  std::vector<BitMatrix> planes;  // channels * 8, index c * 8 + (b - 1)

  BitMatrix& plane(int channel, int significance) {
    return planes[static_cast<std::size_t>(channel) * 8 + (significance - 1)];
  }
  const BitMatrix& plane(int channel, int significance) const {
    return planes[static_cast<std::size_t>(channel) * 8 + (significance - 1)];
  }
};

// Decomposes an image into bit planes. Exact and loss-free.
BitPlaneStack slice(const PixelImage& img);

// Reassembles samples as sum over planes of bit * 2^(b-1). Throws
// std::invalid_argument when the stack structure is malformed (wrong plane
// count or mismatched plane dimensions).
PixelImage reconstruct(const BitPlaneStack& stack);

}  // namespace ldpix

#endif  // LDPIX_BITPLANE_HPP_
