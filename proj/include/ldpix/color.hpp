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

#ifndef LDPIX_COLOR_HPP_
#define LDPIX_COLOR_HPP_

#include "ldpix/image.hpp"

namespace ldpix {

// Full-range BT.601 (JPEG/JFIF style) conversion: luma spans [0, 255] and
// the chroma planes are centered on 128 with no headroom/footroom. Values
// are rounded half away from zero and clamped to [0, 255], so a roundtrip
// through both conversions moves any sample by at most 1.
//
// Requires a 3-channel RGB image; throws std::invalid_argument otherwise.
PixelImage rgb_to_ycbcr(const PixelImage& img);

// Inverse of rgb_to_ycbcr (up to the +/-1 quantization above).
// Requires a 3-channel YCbCr image; throws std::invalid_argument otherwise.
PixelImage ycbcr_to_rgb(const PixelImage& img);

}  // namespace ldpix

#endif  // LDPIX_COLOR_HPP_
