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

#ifndef LDPIX_WAVELET_HPP_
#define LDPIX_WAVELET_HPP_

#include <vector>

#include "ldpix/image.hpp"

namespace ldpix {

// Dense row-major matrix of doubles used for single-channel planes.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c)
      : rows(r), cols(c),
        data(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0) {}

  double& at(int r, int c) {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
  double at(int r, int c) const {
    return data[static_cast<std::size_t>(r) * cols + c];
  }
};

// One-level orthonormal Haar decomposition of a single channel. For the
// 2x2 block [[a, b], [c, d]] the coefficients are
//   LL = (a+b+c+d)/2   (local average, carries most of the energy)
//   LH = (a-b+c-d)/2   (horizontal detail / vertical edges)
//   HL = (a+b-c-d)/2   (vertical detail / horizontal edges)
//   HH = (a-b-c+d)/2   (diagonal detail)
// Inputs with odd width or height are padded to even size by edge
// replication before analysis; orig_rows/orig_cols record the unpadded
// shape so synthesis can crop back.
struct SubbandSet {
  Matrix ll;
  Matrix lh;
  Matrix hl;
  Matrix hh;
  int orig_rows = 0;
  int orig_cols = 0;
};

// Analysis. Throws std::invalid_argument on an empty matrix.
SubbandSet haar_dwt(const Matrix& m);

// Zeroes the LL band (the perceptual content carrier) and leaves the
// detail bands untouched.
SubbandSet ll_prune(SubbandSet bands);

// Synthesis, inverse of haar_dwt (exact up to float rounding). Throws
// std::invalid_argument when the band shapes or recorded original
// dimensions are inconsistent.
Matrix haar_idwt(const SubbandSet& bands);

// Per-channel LL pruning round trip over a whole image: analyze, zero the
// LL band, synthesize, round half away from zero, clamp to [0, 255]. The
// output keeps the input's dimensions and colorspace tag.
PixelImage perceptual_obfuscate(const PixelImage& img);

}  // namespace ldpix

#endif  // LDPIX_WAVELET_HPP_
