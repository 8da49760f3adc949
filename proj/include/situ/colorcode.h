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

// Blue/red stripe codes that tag physical objects with a numeric ID.
//
// Code geometry (18 stripes, left to right):
//
//   RED BLUE | d11 d10 ... d0 | p1 p0 | RED BLUE
//
// d11..d0 are the ID bits, most significant first, BLUE = 0 and RED = 1.
// p1 p0 hold (popcount of the data bits) mod 4 in the same bit encoding, so
// flipping any single stripe is detected. The geometry is this project's own
// choice; see docs/colorcode.md.

#ifndef SITU_COLORCODE_H_
#define SITU_COLORCODE_H_

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace situ {

// Identifier carried by a color code. Situations and tagged objects share
// this ID space.
class ObjectId {
 public:
  static constexpr uint32_t kMax = 4095;

  // Throws RangeError when value > kMax.
  explicit ObjectId(uint32_t value);

  uint32_t value() const { return value_; }

  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;

 private:
  uint32_t value_;
};

std::string ToString(ObjectId id);

}  // namespace situ

template <>
struct std::hash<situ::ObjectId> {
  size_t operator()(const situ::ObjectId& id) const noexcept {
    return std::hash<uint32_t>{}(id.value());
  }
};

namespace situ::colorcode {

enum class Stripe : uint8_t { kBlue = 0, kRed = 1 };

inline constexpr int kDataBits = 12;
inline constexpr int kParityStripes = 2;
inline constexpr int kGuardStripes = 2;
inline constexpr int kStripeCount =
    2 * kGuardStripes + kDataBits + kParityStripes;  // 18

using ColorCode = std::array<Stripe, kStripeCount>;

struct Rgb {
  uint8_t r = 0;
  uint8_t g = 0;
  uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kBluePixel{0, 0, 255};
inline constexpr Rgb kRedPixel{255, 0, 0};

// One row of a synthetic camera frame.
struct Scanline {
  std::vector<Rgb> pixels;

  size_t width() const { return pixels.size(); }
};

struct NoiseSpec {
  // Each channel receives uniform integer noise in [-amplitude, amplitude].
  int amplitude = 0;
  // Each stripe width is scaled by a uniform factor in [1 - jitter,
  // 1 + jitter] before the stripes are stretched to fill the line.
  double jitter = 0.0;
  uint64_t seed = 0;

  // Throws RangeError outside amplitude 0..128 or jitter 0.0..0.4.
  void Validate() const;
};

// Dominant channel must beat the other by this much to count as a stripe.
inline constexpr int kClassifyMargin = 30;

ColorCode EncodeId(ObjectId id);

// Throws RangeError when width < kStripeCount or the noise spec is invalid.
Scanline RenderScanline(const ColorCode& code, size_t width,
                        const NoiseSpec& noise = {});

// Returns nullopt when the line carries no valid code. This is the normal
// outcome for lines that do not cross a tag.
std::optional<ObjectId> DecodeScanline(const Scanline& line);

// "RBBBB..." style rendering used by the CLI and in test failure messages.
std::string StripeString(const ColorCode& code);

}  // namespace situ::colorcode

#endif  // SITU_COLORCODE_H_
