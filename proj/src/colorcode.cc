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

#include "situ/colorcode.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "situ/errors.h"

namespace situ {

ObjectId::ObjectId(uint32_t value) : value_(value) {
  if (value > kMax) {
    throw RangeError("object id " + std::to_string(value) +
                     " outside 0.." + std::to_string(kMax));
  }
}

std::string ToString(ObjectId id) { return std::to_string(id.value()); }

}  // namespace situ

namespace situ::colorcode {
namespace {

constexpr Stripe kGuard[kGuardStripes] = {Stripe::kRed, Stripe::kBlue};
constexpr int kDataStart = kGuardStripes;
constexpr int kParityStart = kDataStart + kDataBits;
constexpr int kTrailerStart = kParityStart + kParityStripes;

Stripe BitStripe(uint32_t bit) { return bit ? Stripe::kRed : Stripe::kBlue; }

enum class PixelClass : uint8_t { kBlue, kRed, kUnknown };

PixelClass Classify(const Rgb& px) {
  const int diff = int{px.r} - int{px.b};
  if (diff >= kClassifyMargin) return PixelClass::kRed;
  if (-diff >= kClassifyMargin) return PixelClass::kBlue;
  return PixelClass::kUnknown;
}

struct Run {
  Stripe color;
  size_t length;
};

// Turns measured run lengths into whole stripe counts that sum to exactly
// kStripeCount. Each run keeps at least one stripe; leftover stripes go to
// the runs that are most under-counted. Returns false when the runs cannot
// plausibly be a code.
bool ApportionStripes(const std::vector<Run>& runs, double stripe_width,
                      std::vector<int>& counts) {
  if (runs.size() > static_cast<size_t>(kStripeCount)) return false;
  std::vector<double> exact(runs.size());
  counts.assign(runs.size(), 0);
  int total = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    exact[i] = static_cast<double>(runs[i].length) / stripe_width;
    counts[i] = std::max(1, static_cast<int>(std::floor(exact[i])));
    total += counts[i];
  }
  while (total < kStripeCount) {
    size_t best = 0;
    for (size_t i = 1; i < runs.size(); ++i) {
      if (exact[i] - counts[i] > exact[best] - counts[best]) best = i;
    }
    ++counts[best];
    ++total;
  }
  while (total > kStripeCount) {
    size_t best = runs.size();
    for (size_t i = 0; i < runs.size(); ++i) {
      if (counts[i] <= 1) continue;
      if (best == runs.size() ||
          exact[i] - counts[i] < exact[best] - counts[best]) {
        best = i;
      }
    }
    if (best == runs.size()) return false;
    --counts[best];
    --total;
  }
  for (size_t i = 0; i < runs.size(); ++i) {
    if (std::abs(exact[i] - counts[i]) > 0.5 + 0.25 * counts[i]) return false;
  }
  return true;
}

}  // namespace

void NoiseSpec::Validate() const {
  if (amplitude < 0 || amplitude > 128) {
    throw RangeError("noise amplitude " + std::to_string(amplitude) +
                     " outside 0..128");
  }
  if (!(jitter >= 0.0 && jitter <= 0.4)) {
    throw RangeError("stripe jitter " + std::to_string(jitter) +
                     " outside 0.0..0.4");
  }
}

ColorCode EncodeId(ObjectId id) {
  ColorCode code{};
  for (int i = 0; i < kGuardStripes; ++i) {
    code[i] = kGuard[i];
    code[kTrailerStart + i] = kGuard[i];
  }
  const uint32_t value = id.value();
  for (int bit = 0; bit < kDataBits; ++bit) {
    code[kDataStart + bit] = BitStripe((value >> (kDataBits - 1 - bit)) & 1u);
  }
  const uint32_t parity = static_cast<uint32_t>(std::popcount(value)) % 4;
  code[kParityStart] = BitStripe((parity >> 1) & 1u);
  code[kParityStart + 1] = BitStripe(parity & 1u);
  return code;
}

Scanline RenderScanline(const ColorCode& code, size_t width,
                        const NoiseSpec& noise) {
  if (width < static_cast<size_t>(kStripeCount)) {
    throw RangeError("scanline width " + std::to_string(width) +
                     " below the minimum of " + std::to_string(kStripeCount));
  }
  noise.Validate();
  std::mt19937_64 rng(noise.seed);

  // Stripe boundaries in pixel units.
  std::array<double, kStripeCount + 1> edges{};
  std::uniform_real_distribution<double> jitter(-noise.jitter, noise.jitter);
  double total = 0.0;
  for (int i = 0; i < kStripeCount; ++i) {
    total += noise.jitter > 0.0 ? 1.0 + jitter(rng) : 1.0;
    edges[i + 1] = total;
  }
  for (double& edge : edges) edge *= static_cast<double>(width) / total;

  Scanline line;
  line.pixels.reserve(width);
  int stripe = 0;
  std::uniform_int_distribution<int> channel_noise(-noise.amplitude,
                                                   noise.amplitude);
  auto perturb = [&](uint8_t value) -> uint8_t {
    if (noise.amplitude == 0) return value;
    return static_cast<uint8_t>(
        std::clamp(int{value} + channel_noise(rng), 0, 255));
  };
  for (size_t x = 0; x < width; ++x) {
    const double center = static_cast<double>(x) + 0.5;
    while (stripe < kStripeCount - 1 && center >= edges[stripe + 1]) ++stripe;
    const Rgb base = code[stripe] == Stripe::kRed ? kRedPixel : kBluePixel;
    line.pixels.push_back({perturb(base.r), perturb(base.g), perturb(base.b)});
  }
  return line;
}

std::optional<ObjectId> DecodeScanline(const Scanline& line) {
  std::vector<PixelClass> classes;
  classes.reserve(line.width());
  for (const Rgb& px : line.pixels) classes.push_back(Classify(px));

  const auto first = std::find_if(classes.begin(), classes.end(), [](auto c) {
    return c != PixelClass::kUnknown;
  });
  if (first == classes.end()) return std::nullopt;
  const auto last = std::find_if(classes.rbegin(), classes.rend(), [](auto c) {
                      return c != PixelClass::kUnknown;
                    }).base();
  const size_t extent = static_cast<size_t>(last - first);
  if (extent < static_cast<size_t>(kStripeCount)) return std::nullopt;

  // Unknown pixels inside the code extend the run to their left.
  std::vector<Run> runs;
  for (auto it = first; it != last; ++it) {
    if (*it == PixelClass::kUnknown) {
      ++runs.back().length;
      continue;
    }
    const Stripe color =
        *it == PixelClass::kRed ? Stripe::kRed : Stripe::kBlue;
    if (runs.empty() || runs.back().color != color) {
      runs.push_back({color, 1});
    } else {
      ++runs.back().length;
    }
  }

  std::vector<int> counts;
  const double stripe_width =
      static_cast<double>(extent) / static_cast<double>(kStripeCount);
  if (!ApportionStripes(runs, stripe_width, counts)) return std::nullopt;

  ColorCode stripes{};
  size_t pos = 0;
  for (size_t i = 0; i < runs.size(); ++i) {
    for (int k = 0; k < counts[i]; ++k) stripes[pos++] = runs[i].color;
  }

  for (int i = 0; i < kGuardStripes; ++i) {
    if (stripes[i] != kGuard[i] || stripes[kTrailerStart + i] != kGuard[i]) {
      return std::nullopt;
    }
  }
  uint32_t value = 0;
  for (int bit = 0; bit < kDataBits; ++bit) {
    value = (value << 1) |
            (stripes[kDataStart + bit] == Stripe::kRed ? 1u : 0u);
  }
  const uint32_t parity =
      (stripes[kParityStart] == Stripe::kRed ? 2u : 0u) |
      (stripes[kParityStart + 1] == Stripe::kRed ? 1u : 0u);
  if (parity != static_cast<uint32_t>(std::popcount(value)) % 4) {
    return std::nullopt;
  }
  return ObjectId(value);
}

std::string StripeString(const ColorCode& code) {
  std::string out;
  out.reserve(code.size());
  for (Stripe s : code) out.push_back(s == Stripe::kRed ? 'R' : 'B');
  return out;
}

}  // namespace situ::colorcode
