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

#include "situ/ppm.h"

#include <cctype>
#include <fstream>
#include <iterator>
#include <sstream>

#include "situ/errors.h"

namespace situ::ppm {
namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  std::string Token() {
    SkipSpaceAndComments();
    const size_t start = pos_;
    while (pos_ < bytes_.size() &&
           !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) throw SyntaxError("ppm: truncated header");
    return std::string(bytes_.substr(start, pos_ - start));
  }

  size_t Number() {
    const std::string token = Token();
    size_t value = 0;
    for (char c : token) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw SyntaxError("ppm: bad header field '" + token + "'");
      }
      value = value * 10 + static_cast<size_t>(c - '0');
      if (value > (1u << 20)) throw SyntaxError("ppm: dimension too large");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  size_t RasterOffset() {
    if (pos_ >= bytes_.size() ||
        !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw SyntaxError("ppm: missing raster");
    }
    return pos_ + 1;
  }

 private:
  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

}  // namespace

colorcode::Scanline Image::Row(size_t y) const {
  colorcode::Scanline line;
  const auto begin = pixels.begin() + static_cast<std::ptrdiff_t>(y * width);
  line.pixels.assign(begin, begin + static_cast<std::ptrdiff_t>(width));
  return line;
}

Image Parse(std::string_view bytes) {
  HeaderReader reader(bytes);
  if (reader.Token() != "P6") throw SyntaxError("ppm: expected P6 magic");
  Image image;
  image.width = reader.Number();
  image.height = reader.Number();
  if (reader.Number() != 255) throw SyntaxError("ppm: maxval must be 255");
  if (image.width == 0 || image.height == 0) {
    throw SyntaxError("ppm: empty raster");
  }
  const size_t offset = reader.RasterOffset();
  const size_t needed = image.width * image.height * 3;
  if (bytes.size() - offset < needed) throw SyntaxError("ppm: truncated raster");
  image.pixels.reserve(image.width * image.height);
  for (size_t i = 0; i < needed; i += 3) {
    image.pixels.push_back({static_cast<uint8_t>(bytes[offset + i]),
                            static_cast<uint8_t>(bytes[offset + i + 1]),
                            static_cast<uint8_t>(bytes[offset + i + 2])});
  }
  return image;
}

std::string Serialize(const Image& image) {
  std::ostringstream out;
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  std::string data = out.str();
  data.reserve(data.size() + image.pixels.size() * 3);
  for (const colorcode::Rgb& px : image.pixels) {
    data.push_back(static_cast<char>(px.r));
    data.push_back(static_cast<char>(px.g));
    data.push_back(static_cast<char>(px.b));
  }
  return data;
}

Image FromScanline(const colorcode::Scanline& line, size_t height) {
  Image image;
  image.width = line.width();
  image.height = height;
  for (size_t y = 0; y < height; ++y) {
    image.pixels.insert(image.pixels.end(), line.pixels.begin(),
                        line.pixels.end());
  }
  return image;
}

Image ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  return Parse(bytes);
}

void WriteFile(const std::string& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << Serialize(image);
}

}  // namespace situ::ppm
