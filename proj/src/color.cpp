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


#include "partctx/color.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace partctx {
namespace {

constexpr std::array<double, 9> kRgbToXyz = {
    0.4124564, 0.3575761, 0.1804375,  //
    0.2126729, 0.7151522, 0.0721750,  //
    0.0193339, 0.1191920, 0.9503041,
};

constexpr double kWhiteX = kRgbToXyz[0] + kRgbToXyz[1] + kRgbToXyz[2];
constexpr double kWhiteY = kRgbToXyz[3] + kRgbToXyz[4] + kRgbToXyz[5];
constexpr double kWhiteZ = kRgbToXyz[6] + kRgbToXyz[7] + kRgbToXyz[8];

constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double linear_to_srgb(double c) {
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double lab_f(double t) { return t > kEpsilon ? std::cbrt(t) : (kKappa * t + 16.0) / 116.0; }

double lab_f_inv(double f) {
  const double f3 = f * f * f;
  return f3 > kEpsilon ? f3 : (116.0 * f - 16.0) / kKappa;
}

// Lookup of the linearized channel value for every 8-bit code.
const std::array<double, 256>& linear_table() {
  static const std::array<double, 256> table = [] {
    std::array<double, 256> t{};
    for (int i = 0; i < 256; ++i) t[i] = srgb_to_linear(i / 255.0);
    return t;
  }();
  return table;
}

}  // namespace

Lab srgb_to_lab(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const auto& lin = linear_table();
  const double rl = lin[r], gl = lin[g], bl = lin[b];
  const double x = kRgbToXyz[0] * rl + kRgbToXyz[1] * gl + kRgbToXyz[2] * bl;
  const double y = kRgbToXyz[3] * rl + kRgbToXyz[4] * gl + kRgbToXyz[5] * bl;
  const double z = kRgbToXyz[6] * rl + kRgbToXyz[7] * gl + kRgbToXyz[8] * bl;
  const double fx = lab_f(x / kWhiteX);
  const double fy = lab_f(y / kWhiteY);
  const double fz = lab_f(z / kWhiteZ);
  Lab out;
  const double yr = y / kWhiteY;
  out.l = std::clamp(yr > kEpsilon ? 116.0 * std::cbrt(yr) - 16.0 : kKappa * yr, 0.0, 100.0);
  out.a = 500.0 * (fx - fy);
  out.b = 200.0 * (fy - fz);
  return out;
}

void lab_to_srgb(const Lab& lab, std::uint8_t* rgb) {
  const double fy = (lab.l + 16.0) / 116.0;
  const double fx = fy + lab.a / 500.0;
  const double fz = fy - lab.b / 200.0;
  const double x = kWhiteX * lab_f_inv(fx);
  const double y = kWhiteY * lab_f_inv(fy);
  const double z = kWhiteZ * lab_f_inv(fz);
  // Inverse of kRgbToXyz.
  const double rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
  const double gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
  const double bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
  const double lin[3] = {rl, gl, bl};
  for (int c = 0; c < 3; ++c) {
    const double v = linear_to_srgb(std::clamp(lin[c], 0.0, 1.0));
    rgb[c] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  }
}

ImageLab to_lab(const RgbImage& rgb) {
  ImageLab out(rgb.width, rgb.height);
  const std::size_t n = rgb.pixel_count();
  for (std::size_t i = 0; i < n; ++i) {
    out.set(i, srgb_to_lab(rgb.data[3 * i], rgb.data[3 * i + 1], rgb.data[3 * i + 2]));
  }
  return out;
}

RgbImage to_rgb(const ImageLab& lab) {
  RgbImage out(lab.width, lab.height);
  const std::size_t n = lab.pixel_count();
  for (std::size_t i = 0; i < n; ++i) lab_to_srgb(lab.pixel(i), &out.data[3 * i]);
  return out;
}

}  // namespace partctx
