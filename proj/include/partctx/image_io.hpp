// Copyright 2026 The partctx Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef PARTCTX_IMAGE_IO_HPP_
#define PARTCTX_IMAGE_IO_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "partctx/color.hpp"

namespace partctx {

// Row-major class indices; 0 is background.
struct LabelMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  LabelMap() = default;
  LabelMap(int w, int h) : width(w), height(h), data(std::size_t(w) * h, 0) {}
  std::size_t pixel_count() const { return std::size_t(width) * height; }
};

// Only 8-bit RGB PNGs are accepted; anything else is a FormatError.
RgbImage read_png_rgb(const std::filesystem::path& path);
void write_png_rgb(const RgbImage& image, const std::filesystem::path& path);

// read_png_rgb followed by the sRGB -> Lab conversion.
ImageLab load_image(const std::filesystem::path& path);

// Label maps are 8-bit grayscale PNGs with gray value = class index.
LabelMap read_label_map(const std::filesystem::path& path);
void write_label_map(const LabelMap& labels, const std::filesystem::path& path);

std::array<std::uint8_t, 3> label_color(int label);

// Blends the label palette over the image (background left untouched).
RgbImage label_overlay(const RgbImage& image, const LabelMap& labels, double alpha = 0.55);

// Marks pixels whose 4-neighbour carries a different superpixel id.
RgbImage boundary_overlay(const RgbImage& image, const std::vector<int>& assignment);

// Maps values in [0,1] to a grayscale-to-red heat map.
RgbImage heat_map(int width, int height, const std::vector<double>& values);

}  // namespace partctx

#endif  // PARTCTX_IMAGE_IO_HPP_
