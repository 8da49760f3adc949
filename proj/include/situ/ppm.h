/*
 * Copyright (C) 2026 The Situ Talker Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SITU_PPM_H_
#define SITU_PPM_H_

#include <string>
#include <string_view>
#include <vector>

#include "situ/colorcode.h"

namespace situ::ppm {

// Binary PPM (P6) raster with maxval 255.
struct Image {
  size_t width = 0;
  size_t height = 0;
  std::vector<colorcode::Rgb> pixels;  // row-major

  colorcode::Scanline Row(size_t y) const;
};

// Throws SyntaxError on anything that is not a complete P6 raster.
Image Parse(std::string_view bytes);
std::string Serialize(const Image& image);

Image FromScanline(const colorcode::Scanline& line, size_t height = 1);

Image ReadFile(const std::string& path);
void WriteFile(const std::string& path, const Image& image);

}  // namespace situ::ppm

#endif  // SITU_PPM_H_
