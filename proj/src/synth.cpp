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


#include "partctx/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "partctx/error.hpp"
#include "partctx/pose_context.hpp"

namespace partctx {
namespace {

// std::uniform_*_distribution is implementation-defined; derive values from
// raw engine output instead so scenes are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return std::min(n - 1, int(uniform() * n)); }

 private:
  std::mt19937_64 engine_;
};

struct Segment {
  Point2 a, b;
};

double distance_to_segment(double px, double py, const Segment& s) {
  const double vx = s.b.x - s.a.x, vy = s.b.y - s.a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((px - s.a.x) * vx + (py - s.a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (s.a.x + t * vx), py - (s.a.y + t * vy));
}

constexpr std::array<std::array<int, 3>, 8> kPartPalette = {{
    {205, 45, 40},
    {40, 165, 70},
    {45, 75, 205},
    {225, 185, 30},
    {165, 45, 185},
    {30, 175, 185},
    {235, 120, 30},
    {240, 240, 240},
}};

std::uint8_t to_u8(double v) { return std::uint8_t(std::clamp(std::lround(v), 0L, 255L)); }

}  // namespace

SyntheticScene synth(std::uint64_t seed, int n_parts, int size, double noise) {
  if (n_parts < 1) throw ParameterError("synth: n_parts must be >= 1");
  if (n_parts > int(kPartPalette.size())) throw ParameterError("synth: at most 8 parts");
  if (size < 32) throw ParameterError("synth: size must be >= 32");
  if (!(noise >= 0.0 && noise < 1.0)) throw ParameterError("synth: noise must lie in [0, 1)");

  Rng rng(seed);
  const double radius = std::max(3.0, 0.07 * size);
  const double length = std::min(0.35 * size, 0.75 * size / n_parts + radius);
  const double margin = radius + 2.0;
  const double turn = std::numbers::pi / 3.0;

  SyntheticScene scene;
  std::vector<Segment> segments;
  LabelMap gt(size, size);
  Skeleton skeleton;
  skeleton.image = ImageSize{size, size};

  bool placed = false;
  for (int attempt = 0; attempt < 10000 && !placed; ++attempt) {
    segments.clear();
    Point2 p{rng.uniform(margin, size - margin), rng.uniform(margin, size - margin)};
    double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    bool inside = true;
    for (int i = 0; i < n_parts; ++i) {
      if (i > 0) angle += rng.uniform(-turn, turn);
      const Point2 q{p.x + length * std::cos(angle), p.y + length * std::sin(angle)};
      if (q.x < margin || q.y < margin || q.x > size - margin || q.y > size - margin) {
        inside = false;
        break;
      }
      segments.push_back({p, q});
      p = q;
    }
    if (!inside) continue;

    // Region of a pixel: nearest segment within the radius, lower index on ties.
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        double best = std::numeric_limits<double>::infinity();
        int label = 0;
        for (int i = 0; i < n_parts; ++i) {
          const double d = distance_to_segment(x + 0.5, y + 0.5, segments[std::size_t(i)]);
          if (d <= radius && d < best) {
            best = d;
            label = i + 1;
          }
        }
        gt.data[std::size_t(y) * size + x] = std::uint8_t(label);
      }
    }

    // Medial lines trimmed to the central 70% of each part; every pixel they
    // cross must carry the part's own label.
    skeleton.parts.clear();
    placed = true;
    for (int i = 0; i < n_parts && placed; ++i) {
      const Segment& s = segments[std::size_t(i)];
      const Point2 a{s.a.x + 0.15 * (s.b.x - s.a.x), s.a.y + 0.15 * (s.b.y - s.a.y)};
      const Point2 b{s.a.x + 0.85 * (s.b.x - s.a.x), s.a.y + 0.85 * (s.b.y - s.a.y)};
      for (auto [x, y] : rasterize_segment(a, b)) {
        if (gt.data[std::size_t(y) * size + x] != i + 1) {
          placed = false;
          break;
        }
      }
      skeleton.parts.push_back({i + 1, {a, b}});
    }
  }
  if (!placed) throw ParameterError("synth: could not place the figure inside the image");

  // Part colors: distinct palette entries in a seed-dependent order.
  std::vector<int> order(kPartPalette.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    std::swap(order[i], order[std::size_t(rng.below(int(i) + 1))]);
  }

  const std::array<double, 3> base = {rng.uniform(95, 150), rng.uniform(95, 150),
                                      rng.uniform(95, 150)};
  const double fx = rng.uniform(0.02, 0.06), fy = rng.uniform(0.02, 0.06);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);

  RgbImage rgb(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const std::size_t i = std::size_t(y) * size + x;
      const int label = gt.data[i];
      for (int c = 0; c < 3; ++c) {
        double v;
        if (label == 0) {
          const double wave = 14.0 * std::sin(2.0 * std::numbers::pi * (fx * x + fy * y) + phase);
          v = base[std::size_t(c)] + wave + rng.uniform(-6.0, 6.0);
        } else {
          v = kPartPalette[std::size_t(order[std::size_t(label - 1)])][std::size_t(c)] +
              rng.uniform(-5.0, 5.0);
        }
        rgb.data[3 * i + std::size_t(c)] = to_u8(v);
      }
    }
  }

  const int n_labels = n_parts + 1;
  LikelihoodStack noisy(size, size, n_labels);
  for (std::size_t i = 0; i < noisy.pixel_count(); ++i) {
    if (rng.uniform() < noise) {
      for (int l = 0; l < n_labels; ++l) noisy.at(i, l) = float(rng.uniform());
    } else {
      noisy.at(i, gt.data[i]) = 1.0f;
    }
    for (int l = 0; l < n_labels; ++l) noisy.at(i, l) = std::clamp(noisy.at(i, l), 0.0f, 1.0f);
  }

  scene.image = to_lab(rgb);
  scene.rgb = std::move(rgb);
  scene.gt = std::move(gt);
  scene.skeleton = std::move(skeleton);
  scene.noisy_likelihoods = std::move(noisy);
  return scene;
}

}  // namespace partctx
