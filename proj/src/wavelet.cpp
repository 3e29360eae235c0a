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

#include "ldpix/wavelet.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ldpix {
namespace {

Matrix pad_to_even(const Matrix& m) {
  const int pr = m.rows + (m.rows & 1);
  const int pc = m.cols + (m.cols & 1);
  if (pr == m.rows && pc == m.cols) return m;
  Matrix p(pr, pc);
  for (int r = 0; r < pr; ++r) {
    const int sr = r < m.rows ? r : m.rows - 1;
    for (int c = 0; c < pc; ++c) {
      const int sc = c < m.cols ? c : m.cols - 1;
      p.at(r, c) = m.at(sr, sc);
    }
  }
  return p;
}

std::uint8_t quantize(double x) {
  const long v = std::lround(x);
  if (v < 0) return 0;
  if (v > 255) return 255;
  return static_cast<std::uint8_t>(v);
}

}  // namespace

SubbandSet haar_dwt(const Matrix& m) {
  if (m.rows <= 0 || m.cols <= 0) {
    throw std::invalid_argument("haar_dwt expects a non-empty matrix");
  }
  if (m.data.size() !=
      static_cast<std::size_t>(m.rows) * static_cast<std::size_t>(m.cols)) {
    throw std::invalid_argument("matrix buffer does not match its shape");
  }
  const Matrix p = pad_to_even(m);
  const int band_rows = p.rows / 2;
  const int band_cols = p.cols / 2;

  SubbandSet bands;
  bands.ll = Matrix(band_rows, band_cols);
  bands.lh = Matrix(band_rows, band_cols);
  bands.hl = Matrix(band_rows, band_cols);
  bands.hh = Matrix(band_rows, band_cols);
  bands.orig_rows = m.rows;
  bands.orig_cols = m.cols;

  for (int i = 0; i < band_rows; ++i) {
    for (int j = 0; j < band_cols; ++j) {
      const double a = p.at(2 * i, 2 * j);
      const double b = p.at(2 * i, 2 * j + 1);
      const double c = p.at(2 * i + 1, 2 * j);
      const double d = p.at(2 * i + 1, 2 * j + 1);
      bands.ll.at(i, j) = (a + b + c + d) / 2.0;
      bands.lh.at(i, j) = (a - b + c - d) / 2.0;
      bands.hl.at(i, j) = (a + b - c - d) / 2.0;
      bands.hh.at(i, j) = (a - b - c + d) / 2.0;
    }
  }
  return bands;
}

SubbandSet ll_prune(SubbandSet bands) {
  for (double& v : bands.ll.data) v = 0.0;
  return bands;
}

Matrix haar_idwt(const SubbandSet& bands) {
  const int band_rows = bands.ll.rows;
  const int band_cols = bands.ll.cols;
  if (band_rows <= 0 || band_cols <= 0) {
    throw std::invalid_argument("haar_idwt expects non-empty subbands");
  }
  auto same_shape = [&](const Matrix& b) {
    return b.rows == band_rows && b.cols == band_cols &&
           b.data.size() == static_cast<std::size_t>(band_rows) * band_cols;
  };
  if (!same_shape(bands.ll) || !same_shape(bands.lh) || !same_shape(bands.hl) ||
      !same_shape(bands.hh)) {
    throw std::invalid_argument("subband shapes disagree");
  }
  const int pr = 2 * band_rows;
  const int pc = 2 * band_cols;
  if (bands.orig_rows != pr && bands.orig_rows != pr - 1) {
    throw std::invalid_argument(
        "recorded original row count " + std::to_string(bands.orig_rows) +
        " does not match subband height " + std::to_string(band_rows));
  }
  if (bands.orig_cols != pc && bands.orig_cols != pc - 1) {
    throw std::invalid_argument(
        "recorded original column count " + std::to_string(bands.orig_cols) +
        " does not match subband width " + std::to_string(band_cols));
  }

  Matrix p(pr, pc);
  for (int i = 0; i < band_rows; ++i) {
    for (int j = 0; j < band_cols; ++j) {
      const double ll = bands.ll.at(i, j);
      const double lh = bands.lh.at(i, j);
      const double hl = bands.hl.at(i, j);
      const double hh = bands.hh.at(i, j);
      p.at(2 * i, 2 * j) = (ll + lh + hl + hh) / 2.0;
      p.at(2 * i, 2 * j + 1) = (ll - lh + hl - hh) / 2.0;
      p.at(2 * i + 1, 2 * j) = (ll + lh - hl - hh) / 2.0;
      p.at(2 * i + 1, 2 * j + 1) = (ll - lh - hl + hh) / 2.0;
    }
  }
  if (bands.orig_rows == pr && bands.orig_cols == pc) return p;

  Matrix out(bands.orig_rows, bands.orig_cols);
  for (int r = 0; r < out.rows; ++r) {
    for (int c = 0; c < out.cols; ++c) {
      out.at(r, c) = p.at(r, c);
    }
  }
  return out;
}

PixelImage perceptual_obfuscate(const PixelImage& img) {
  img.validate();
  PixelImage out = img;
  Matrix plane(img.height, img.width);
  for (int ch = 0; ch < img.channels; ++ch) {
    for (int r = 0; r < img.height; ++r) {
      for (int c = 0; c < img.width; ++c) {
        plane.at(r, c) = img.at(r, c, ch);
      }
    }
    const Matrix pruned = haar_idwt(ll_prune(haar_dwt(plane)));
    for (int r = 0; r < img.height; ++r) {
      for (int c = 0; c < img.width; ++c) {
        out.at(r, c, ch) = quantize(pruned.at(r, c));
      }
    }
  }
  return out;
}

}  // namespace ldpix
