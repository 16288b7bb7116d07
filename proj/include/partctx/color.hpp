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


#ifndef PARTCTX_COLOR_HPP_
#define PARTCTX_COLOR_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace partctx {

struct Lab {
  double l = 0.0;
  double a = 0.0;
  double b = 0.0;
};

inline double squared_distance(const Lab& p, const Lab& q) {
  const double dl = p.l - q.l;
  const double da = p.a - q.a;
  const double db = p.b - q.b;
  return dl * dl + da * da + db * db;
}

// 8-bit interleaved RGB raster, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(std::size_t(w) * h * 3, 0) {}
  std::size_t pixel_count() const { return std::size_t(width) * height; }
};

// CIE Lab raster, row-major (L, a, b) triplets.
struct ImageLab {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  ImageLab() = default;
  ImageLab(int w, int h) : width(w), height(h), data(std::size_t(w) * h * 3, 0.0) {}

  std::size_t pixel_count() const { return std::size_t(width) * height; }
  bool empty() const { return width <= 0 || height <= 0; }

  Lab pixel(std::size_t i) const { return {data[3 * i], data[3 * i + 1], data[3 * i + 2]}; }
  Lab pixel(int x, int y) const { return pixel(std::size_t(y) * width + x); }
  void set(std::size_t i, const Lab& c) {
    data[3 * i] = c.l;
    data[3 * i + 1] = c.a;
    data[3 * i + 2] = c.b;
  }
};

// sRGB (D65, IEC 61966-2-1 transfer curve) to CIE Lab. The white point is
// taken as the XYZ image of sRGB white so that (255,255,255) maps to
// L=100, a=b=0 up to rounding.
Lab srgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b);

// Inverse of srgb_to_lab with rounding and gamut clipping to 8 bits.
void lab_to_srgb(const Lab& lab, std::uint8_t* rgb);

ImageLab to_lab(const RgbImage& rgb);
RgbImage to_rgb(const ImageLab& lab);

}  // namespace partctx

#endif  // PARTCTX_COLOR_HPP_
