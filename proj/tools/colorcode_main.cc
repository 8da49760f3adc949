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

// colorcode: encode IDs as stripe codes, render them to P6 rasters, and
// decode rasters back to IDs.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "situ/colorcode.h"
#include "situ/errors.h"
#include "situ/ppm.h"
#include "situ/service.h"

int main(int argc, char** argv) {
  CLI::App app{"Blue/red stripe color codes"};
  app.require_subcommand(1);

  auto* encode = app.add_subcommand("encode", "Print the stripe pattern for an ID");
  uint32_t encode_id = 0;
  encode->add_option("id", encode_id, "Object ID, 0..4095")->required();

  auto* render = app.add_subcommand("render", "Render an ID as a P6 raster");
  uint32_t render_id = 0;
  size_t width = 360;
  size_t height = 1;
  situ::colorcode::NoiseSpec noise;
  std::string out_path;
  render->add_option("id", render_id, "Object ID, 0..4095")->required();
  render->add_option("--width", width, "Pixels per row");
  render->add_option("--height", height, "Rows (each row gets its own noise)");
  render->add_option("--noise", noise.amplitude, "Per-channel noise amplitude, 0..128");
  render->add_option("--jitter", noise.jitter, "Stripe width jitter, 0.0..0.4");
  render->add_option("--seed", noise.seed, "Random seed");
  render->add_option("--out", out_path, "Output .ppm file")->required();

  auto* decode = app.add_subcommand("decode", "Decode a P6 raster");
  std::string in_path;
  decode->add_option("file", in_path, "Input .ppm file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode) {
      const auto code = situ::colorcode::EncodeId(situ::ObjectId(encode_id));
      std::cout << situ::colorcode::StripeString(code) << "\n";
      return 0;
    }
    if (*render) {
      const auto code = situ::colorcode::EncodeId(situ::ObjectId(render_id));
      situ::ppm::Image image;
      image.width = width;
      image.height = height;
      for (size_t y = 0; y < height; ++y) {
        situ::colorcode::NoiseSpec row_noise = noise;
        row_noise.seed = noise.seed + y;
        const auto row = situ::colorcode::RenderScanline(code, width, row_noise);
        image.pixels.insert(image.pixels.end(), row.pixels.begin(), row.pixels.end());
      }
      situ::ppm::WriteFile(out_path, image);
      return 0;
    }
    if (*decode) {
      const auto id = situ::service::DecodeRaster(situ::ppm::ReadFile(in_path));
      if (!id) {
        std::cout << "NoCode\n";
        return 1;
      }
      std::cout << situ::ToString(*id) << "\n";
      return 0;
    }
  } catch (const situ::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
