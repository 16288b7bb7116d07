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


#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "partctx/error.hpp"
#include "partctx/image_io.hpp"

namespace partctx {
namespace {

// Reads a PNG whose native format must equal `expected`.
std::vector<std::uint8_t> read_png(const std::filesystem::path& path, png_uint_32 expected,
                                   int& width, int& height) {
  if (!std::filesystem::exists(path)) throw IoError("missing file " + path.string());
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw FormatError(path.string() + ": " + image.message);
  }
  if (image.format != expected) {
    png_image_free(&image);
    throw FormatError(path.string() + ": unsupported bit depth or color type");
  }
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw FormatError(path.string() + ": " + msg);
  }
  width = int(image.width);
  height = int(image.height);
  return buffer;
}

void write_png(const std::filesystem::path& path, png_uint_32 format, int width, int height,
               const std::uint8_t* pixels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = png_uint_32(width);
  image.height = png_uint_32(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels, 0, nullptr)) {
    throw IoError(path.string() + ": " + image.message);
  }
}

}  // namespace

RgbImage read_png_rgb(const std::filesystem::path& path) {
  RgbImage out;
  out.data = read_png(path, PNG_FORMAT_RGB, out.width, out.height);
  return out;
}

void write_png_rgb(const RgbImage& image, const std::filesystem::path& path) {
  write_png(path, PNG_FORMAT_RGB, image.width, image.height, image.data.data());
}

ImageLab load_image(const std::filesystem::path& path) { return to_lab(read_png_rgb(path)); }

LabelMap read_label_map(const std::filesystem::path& path) {
  LabelMap out;
  out.data = read_png(path, PNG_FORMAT_GRAY, out.width, out.height);
  return out;
}

void write_label_map(const LabelMap& labels, const std::filesystem::path& path) {
  write_png(path, PNG_FORMAT_GRAY, labels.width, labels.height, labels.data.data());
}

std::array<std::uint8_t, 3> label_color(int label) {
  static constexpr std::array<std::array<std::uint8_t, 3>, 8> kPalette = {{
      {0, 0, 0},
      {230, 25, 75},
      {60, 180, 75},
      {255, 225, 25},
      {0, 130, 200},
      {245, 130, 48},
      {145, 30, 180},
      {70, 240, 240},
  }};
  if (label < int(kPalette.size())) return kPalette[std::size_t(label)];
  // Deterministic hash colors for larger label sets.
  const auto h = std::uint32_t(label) * 2654435761u;
  return {std::uint8_t(h >> 24), std::uint8_t(h >> 16), std::uint8_t(h >> 8)};
}

RgbImage label_overlay(const RgbImage& image, const LabelMap& labels, double alpha) {
  RgbImage out = image;
  for (std::size_t i = 0; i < labels.pixel_count(); ++i) {
    if (labels.data[i] == 0) continue;
    const auto c = label_color(labels.data[i]);
    for (int k = 0; k < 3; ++k) {
      const double v = (1.0 - alpha) * image.data[3 * i + k] + alpha * c[std::size_t(k)];
      out.data[3 * i + k] = std::uint8_t(std::lround(v));
    }
  }
  return out;
}

RgbImage boundary_overlay(const RgbImage& image, const std::vector<int>& assignment) {
  RgbImage out = image;
  const int w = image.width, h = image.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = std::size_t(y) * w + x;
      const bool edge = (x + 1 < w && assignment[i + 1] != assignment[i]) ||
                        (y + 1 < h && assignment[i + w] != assignment[i]);
      if (edge) {
        out.data[3 * i] = 255;
        out.data[3 * i + 1] = 255;
        out.data[3 * i + 2] = 0;
      }
    }
  }
  return out;
}

RgbImage heat_map(int width, int height, const std::vector<double>& values) {
  RgbImage out(width, height);
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    const double v = std::clamp(values[i], 0.0, 1.0);
    out.data[3 * i] = std::uint8_t(std::lround(255.0 * v));
    out.data[3 * i + 1] = std::uint8_t(std::lround(64.0 * (1.0 - v)));
    out.data[3 * i + 2] = std::uint8_t(std::lround(128.0 * (1.0 - v)));
  }
  return out;
}

}  // namespace partctx
