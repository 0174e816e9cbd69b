// Copyright 2026 The qia Authors
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qia/grid.hpp"

namespace qia {

/// Clamp to [0, 255] and round half away from zero. The one conversion
/// policy used everywhere pixels become bytes.
std::uint8_t to_uint8(double v);

/// Load an 8-bit image. PGM (P2/P5), PPM (P3/P6) and PNG (gray, gray+alpha,
/// RGB, RGBA; alpha dropped) are recognized by file magic. Pixel values come
/// back as doubles in 0..255, one channel per color plane.
ImageBuffer read_image(const std::filesystem::path& path);

/// Write an 8-bit image; the format follows the extension (.pgm/.ppm/.png).
/// One channel writes grayscale, three write color; other channel counts are
/// rejected.
void write_image(const std::filesystem::path& path, const ImageBuffer& img);

/// True for extensions this module can read.
bool is_image_file(const std::filesystem::path& path);

}  // namespace qia
