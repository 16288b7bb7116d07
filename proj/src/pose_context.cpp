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


#include "partctx/pose_context.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>

#include "partctx/error.hpp"

namespace partctx {

std::vector<std::pair<int, int>> rasterize_segment(Point2 a, Point2 b) {
  int x0 = int(std::floor(a.x)), y0 = int(std::floor(a.y));
  const int x1 = int(std::floor(b.x)), y1 = int(std::floor(b.y));
  const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  std::vector<std::pair<int, int>> out;
  out.reserve(std::size_t(std::max(dx, -dy)) + 1);
  while (true) {
    out.emplace_back(x0, y0);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
  return out;
}

std::vector<SeedSet> rasterize_skeleton(const Skeleton& skeleton, const MultiLayerSuperpixels& sp) {
  if (sp.layers.empty()) return {};
  const int w = sp.layers.front().width, h = sp.layers.front().height;
  std::map<int, std::set<int>> seeds;
  for (const auto& part : skeleton.parts) {
    auto& set = seeds[part.label];
    for (std::size_t s = 0; s + 1 < part.points.size(); ++s) {
      for (auto [x, y] : rasterize_segment(part.points[s], part.points[s + 1])) {
        if (x < 0 || y < 0 || x >= w || y >= h) continue;
        const std::size_t p = std::size_t(y) * w + x;
        for (std::size_t l = 0; l < sp.layers.size(); ++l) {
          set.insert(sp.global_id(l, sp.layers[l].assignment[p]));
        }
      }
    }
    if (set.empty()) {
      throw FormatError("pose context: skeleton line of label " + std::to_string(part.label) +
                        " lies outside the image");
    }
  }
  std::vector<SeedSet> out;
  for (auto& [label, ids] : seeds) out.push_back({label, std::vector<int>(ids.begin(), ids.end())});
  return out;
}

double geodesic_quantum(const SuperpixelLayer& layer) {
  double largest = 0.0;
  for (std::size_t m = 0; m < layer.adjacency.size(); ++m) {
    for (int n : layer.adjacency[m]) {
      largest = std::max(largest, squared_distance(layer.stats[m].mean_lab,
                                                   layer.stats[std::size_t(n)].mean_lab));
    }
  }
  if (!(largest > 0.0)) return 1.0;
  return std::ldexp(1.0, std::ilogb(std::sqrt(largest)) - 30);
}

double geodesic_edge_cost(const Lab& a, const Lab& b, double quantum) {
  return std::round(std::sqrt(squared_distance(a, b)) / quantum) * quantum;
}

std::vector<double> geodesic_distances(const SuperpixelLayer& layer, std::span<const int> seeds) {
  const int k = layer.size();
  if (seeds.empty()) throw ParameterError("geodesic: empty seed set");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(std::size_t(k), kInf);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (int s : seeds) {
    if (s < 0 || s >= k) throw ParameterError("geodesic: seed id out of range");
    if (dist[std::size_t(s)] != 0.0) {
      dist[std::size_t(s)] = 0.0;
      heap.emplace(0.0, s);
    }
  }
  const double quantum = geodesic_quantum(layer);
  std::vector<bool> done(std::size_t(k), false);
  while (!heap.empty()) {
    const auto [d, m] = heap.top();
    heap.pop();
    if (done[std::size_t(m)]) continue;
    done[std::size_t(m)] = true;
    const Lab& cm = layer.stats[std::size_t(m)].mean_lab;
    for (int n : layer.adjacency[std::size_t(m)]) {
      if (done[std::size_t(n)]) continue;
      const double nd = d + geodesic_edge_cost(cm, layer.stats[std::size_t(n)].mean_lab, quantum);
      if (nd < dist[std::size_t(n)]) {
        dist[std::size_t(n)] = nd;
        heap.emplace(nd, n);
      }
    }
  }
  return dist;
}

double pose_likelihood(double d, double beta) {
  if (!(beta >= 0.0)) throw ParameterError("pose likelihood: beta must be >= 0");
  if (beta == 0.0) return 1.0;
  return std::exp(-beta * d * d);
}

PoseContext build_pose_context(const Skeleton& skeleton, const MultiLayerSuperpixels& sp,
                               int n_labels, double beta) {
  if (n_labels < 2) throw ParameterError("pose context: need at least 2 labels");
  if (!(beta >= 0.0)) throw ParameterError("pose context: beta must be >= 0");
  validate(skeleton, std::nullopt, n_labels);

  PoseContext ctx;
  ctx.n_superpixels = sp.total();
  ctx.n_labels = n_labels;
  ctx.values.assign(std::size_t(ctx.n_superpixels) * n_labels, 0.0);

  for (const SeedSet& seeds : rasterize_skeleton(skeleton, sp)) {
    for (std::size_t l = 0; l < sp.layers.size(); ++l) {
      const int lo = sp.offsets[l], hi = sp.offsets[l + 1];
      std::vector<int> local;
      for (int g : seeds.superpixels) {
        if (g >= lo && g < hi) local.push_back(g - lo);
      }
      if (local.empty()) continue;
      const auto dist = geodesic_distances(sp.layers[l], local);
      for (int m = 0; m < hi - lo; ++m) {
        ctx.at(lo + m, seeds.label) = pose_likelihood(dist[std::size_t(m)], beta);
      }
    }
  }
  for (int m = 0; m < ctx.n_superpixels; ++m) {
    double best = 0.0;
    for (int l = 1; l < n_labels; ++l) best = std::max(best, ctx.at(m, l));
    ctx.at(m, 0) = 1.0 - best;
  }
  return ctx;
}

}  // namespace partctx
