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


#include "partctx/superpixels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <string>
#include <utility>

#include "partctx/error.hpp"

namespace partctx {

std::array<int, 3> histogram_bins(const Lab& c) {
  constexpr int kBins = kHistogramBinsPerChannel;
  auto bin = [](double v, double lo, double hi) {
    const int b = int(std::floor((v - lo) / (hi - lo) * kBins));
    return std::clamp(b, 0, kBins - 1);
  };
  return {bin(c.l, 0.0, 100.0), bin(c.a, -128.0, 128.0), bin(c.b, -128.0, 128.0)};
}

SuperpixelLayer make_layer(const ImageLab& image, std::vector<int> assignment) {
  const std::size_t n = image.pixel_count();
  if (assignment.size() != n) throw DimensionError("superpixels: assignment size mismatch");
  int k = 0;
  for (int id : assignment) {
    if (id < 0) throw FormatError("superpixels: negative id");
    k = std::max(k, id + 1);
  }

  SuperpixelLayer layer;
  layer.width = image.width;
  layer.height = image.height;
  layer.stats.resize(std::size_t(k));
  for (std::size_t i = 0; i < n; ++i) {
    layer.stats[std::size_t(assignment[i])].members.push_back(std::uint32_t(i));
  }
  for (int id = 0; id < k; ++id) {
    auto& s = layer.stats[std::size_t(id)];
    if (s.members.empty()) {
      throw FormatError("superpixels: ids not contiguous (missing " + std::to_string(id) + ")");
    }
    s.pixel_count = s.members.size();
    double sl = 0.0, sa = 0.0, sb = 0.0, sx = 0.0, sy = 0.0;
    const double share = 1.0 / (3.0 * double(s.pixel_count));
    for (std::uint32_t p : s.members) {
      const Lab c = image.pixel(p);
      sl += c.l;
      sa += c.a;
      sb += c.b;
      sx += double(p % std::uint32_t(image.width));
      sy += double(p / std::uint32_t(image.width));
      const auto bins = histogram_bins(c);
      for (int ch = 0; ch < 3; ++ch) {
        s.histogram[std::size_t(ch * kHistogramBinsPerChannel + bins[std::size_t(ch)])] += share;
      }
    }
    const double cnt = double(s.pixel_count);
    s.mean_lab = {sl / cnt, sa / cnt, sb / cnt};
    s.centroid_x = sx / cnt;
    s.centroid_y = sy / cnt;
  }

  std::vector<std::set<int>> adj(std::size_t(k), std::set<int>{});
  const int w = image.width, h = image.height;
  auto link = [&](int a, int b) {
    if (a == b) return;
    adj[std::size_t(a)].insert(b);
    adj[std::size_t(b)].insert(a);
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int id = assignment[std::size_t(y) * w + x];
      if (x + 1 < w) link(id, assignment[std::size_t(y) * w + x + 1]);
      if (y + 1 < h) {
        const std::size_t below = std::size_t(y + 1) * w + x;
        link(id, assignment[below]);
        if (x + 1 < w) link(id, assignment[below + 1]);
        if (x > 0) link(id, assignment[below - 1]);
      }
    }
  }
  layer.adjacency.reserve(std::size_t(k));
  for (auto& s : adj) layer.adjacency.emplace_back(s.begin(), s.end());
  layer.assignment = std::move(assignment);
  return layer;
}

namespace kernels {

SlicGrid slic_grid(int width, int height, int k_target) {
  SlicGrid g;
  const double k = k_target;
  g.ny = int(std::lround(std::sqrt(k * height / width)));
  g.ny = std::clamp(g.ny, 1, std::min(k_target, height));
  g.nx = int(std::lround(k / g.ny));
  g.nx = std::clamp(g.nx, 1, width);
  g.cell_w = double(width) / g.nx;
  g.cell_h = double(height) / g.ny;
  g.step = std::sqrt(double(width) * height / (double(g.nx) * g.ny));
  return g;
}

namespace {

inline bool in_window(double x, double y, const SlicCenter& c, const SlicGrid& g) {
  return std::abs(x - c.x) <= g.cell_w && std::abs(y - c.y) <= g.cell_h;
}

inline double slic_distance(const Lab& p, double x, double y, const SlicCenter& c,
                            double spatial_weight) {
  const double dl = p.l - c.l, da = p.a - c.a, db = p.b - c.b;
  const double dx = x - c.x, dy = y - c.y;
  return dl * dl + da * da + db * db + (dx * dx + dy * dy) * spatial_weight;
}

}  // namespace

void slic_assign_serial(const ImageLab& image, const std::vector<SlicCenter>& centers,
                        const SlicGrid& grid, double compactness, std::vector<int>& labels) {
  const int w = image.width, h = image.height;
  const double spatial_weight = (compactness / grid.step) * (compactness / grid.step);
  std::vector<double> best(image.pixel_count(), std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const SlicCenter& c = centers[k];
    const int x0 = std::max(0, int(std::floor(c.x - grid.cell_w)) - 1);
    const int x1 = std::min(w - 1, int(std::ceil(c.x + grid.cell_w)) + 1);
    const int y0 = std::max(0, int(std::floor(c.y - grid.cell_h)) - 1);
    const int y1 = std::min(h - 1, int(std::ceil(c.y + grid.cell_h)) + 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (!in_window(x, y, c, grid)) continue;
        const std::size_t i = std::size_t(y) * w + x;
        const double d = slic_distance(image.pixel(i), x, y, c, spatial_weight);
        if (d < best[i]) {
          best[i] = d;
          labels[i] = int(k);
        }
      }
    }
  }
}

void slic_assign_parallel(const ImageLab& image, const std::vector<SlicCenter>& centers,
                          const SlicGrid& grid, double compactness, std::vector<int>& labels) {
  const int w = image.width, h = image.height;
  const double spatial_weight = (compactness / grid.step) * (compactness / grid.step);

  // Bucket centers by grid cell; a center inside a pixel's window lies in
  // one of the 3x3 cells around the pixel's cell.
  const int nx = grid.nx, ny = grid.ny;
  std::vector<std::vector<int>> buckets(std::size_t(nx) * ny);
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const int bx = std::clamp(int(std::floor(centers[k].x / grid.cell_w)), 0, nx - 1);
    const int by = std::clamp(int(std::floor(centers[k].y / grid.cell_h)), 0, ny - 1);
    buckets[std::size_t(by) * nx + bx].push_back(int(k));
  }

#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    const int by = std::clamp(int(std::floor(y / grid.cell_h)), 0, ny - 1);
    for (int x = 0; x < w; ++x) {
      const int bx = std::clamp(int(std::floor(x / grid.cell_w)), 0, nx - 1);
      const std::size_t i = std::size_t(y) * w + x;
      const Lab p = image.pixel(i);
      double best = std::numeric_limits<double>::infinity();
      int best_k = -1;
      for (int cy = std::max(0, by - 1); cy <= std::min(ny - 1, by + 1); ++cy) {
        for (int cx = std::max(0, bx - 1); cx <= std::min(nx - 1, bx + 1); ++cx) {
          for (int k : buckets[std::size_t(cy) * nx + cx]) {
            const SlicCenter& c = centers[std::size_t(k)];
            if (!in_window(x, y, c, grid)) continue;
            const double d = slic_distance(p, x, y, c, spatial_weight);
            if (d < best || (d == best && k < best_k)) {
              best = d;
              best_k = k;
            }
          }
        }
      }
      if (best_k >= 0) labels[i] = best_k;
    }
  }
}

std::vector<int> enforce_connectivity(int width, int height, const std::vector<int>& labels) {
  const std::size_t n = std::size_t(width) * height;
  std::vector<int> comp(n, -1);
  std::vector<int> comp_label;
  std::vector<std::size_t> comp_size;
  std::deque<std::size_t> queue;
  const int dx[4] = {1, -1, 0, 0};
  const int dy[4] = {0, 0, 1, -1};

  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = int(comp_label.size());
    const int lab = labels[start];
    comp_label.push_back(lab);
    comp_size.push_back(0);
    comp[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      ++comp_size.back();
      const int px = int(p % std::size_t(width)), py = int(p / std::size_t(width));
      for (int d = 0; d < 4; ++d) {
        const int qx = px + dx[d], qy = py + dy[d];
        if (qx < 0 || qy < 0 || qx >= width || qy >= height) continue;
        const std::size_t q = std::size_t(qy) * width + qx;
        if (comp[q] < 0 && labels[q] == lab) {
          comp[q] = id;
          queue.push_back(q);
        }
      }
    }
  }

  const std::size_t n_comp = comp_label.size();
  int max_label = 0;
  for (int l : comp_label) max_label = std::max(max_label, l);
  // Largest component per label; ties keep the first in raster order.
  std::vector<int> main_comp(std::size_t(max_label) + 1, -1);
  for (std::size_t c = 0; c < n_comp; ++c) {
    int& m = main_comp[std::size_t(comp_label[c])];
    if (m < 0 || comp_size[c] > comp_size[std::size_t(m)]) m = int(c);
  }

  std::vector<std::set<int>> comp_adj(n_comp);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::size_t p = std::size_t(y) * width + x;
      if (x + 1 < width && comp[p + 1] != comp[p]) {
        comp_adj[std::size_t(comp[p])].insert(comp[p + 1]);
        comp_adj[std::size_t(comp[p + 1])].insert(comp[p]);
      }
      if (y + 1 < height && comp[p + width] != comp[p]) {
        comp_adj[std::size_t(comp[p])].insert(comp[p + width]);
        comp_adj[std::size_t(comp[p + width])].insert(comp[p]);
      }
    }
  }

  // owner[c] = main component of the superpixel that c ends up in.
  std::vector<int> owner(n_comp, -1);
  std::vector<std::size_t> owner_size(n_comp, 0);
  std::size_t unresolved = 0;
  for (std::size_t c = 0; c < n_comp; ++c) {
    if (main_comp[std::size_t(comp_label[c])] == int(c)) {
      owner[c] = int(c);
      owner_size[c] = comp_size[c];
    } else {
      ++unresolved;
    }
  }
  while (unresolved > 0) {
    bool progressed = false;
    for (std::size_t c = 0; c < n_comp; ++c) {
      if (owner[c] >= 0) continue;
      int target = -1;
      for (int nb : comp_adj[c]) {
        const int o = owner[std::size_t(nb)];
        if (o < 0) continue;
        if (target < 0 || owner_size[std::size_t(o)] > owner_size[std::size_t(target)] ||
            (owner_size[std::size_t(o)] == owner_size[std::size_t(target)] && o < target)) {
          target = o;
        }
      }
      if (target < 0) continue;
      owner[c] = target;
      owner_size[std::size_t(target)] += comp_size[c];
      --unresolved;
      progressed = true;
    }
    if (!progressed) break;  // unreachable on a connected grid
  }

  // Compact ids in order of first appearance.
  std::vector<int> remap(n_comp, -1);
  std::vector<int> out(n);
  int next = 0;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t o = std::size_t(owner[std::size_t(comp[p])]);
    if (remap[o] < 0) remap[o] = next++;
    out[p] = remap[o];
  }
  return out;
}

}  // namespace kernels

namespace {

double gradient_at(const ImageLab& image, int x, int y) {
  const int w = image.width, h = image.height;
  const Lab l = image.pixel(std::max(x - 1, 0), y);
  const Lab r = image.pixel(std::min(x + 1, w - 1), y);
  const Lab u = image.pixel(x, std::max(y - 1, 0));
  const Lab d = image.pixel(x, std::min(y + 1, h - 1));
  return squared_distance(l, r) + squared_distance(u, d);
}

std::vector<kernels::SlicCenter> seed_centers(const ImageLab& image, const kernels::SlicGrid& g) {
  std::vector<kernels::SlicCenter> centers;
  centers.reserve(std::size_t(g.nx) * g.ny);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const int sx = std::min(image.width - 1, int(std::floor((i + 0.5) * g.cell_w)));
      const int sy = std::min(image.height - 1, int(std::floor((j + 0.5) * g.cell_h)));
      // Move to the lowest-gradient pixel of the 3x3 neighbourhood; the
      // first minimum in row-major order wins.
      int bx = sx, by = sy;
      double best = std::numeric_limits<double>::infinity();
      for (int y = sy - 1; y <= sy + 1; ++y) {
        for (int x = sx - 1; x <= sx + 1; ++x) {
          if (x < 0 || y < 0 || x >= image.width || y >= image.height) continue;
          const double gval = gradient_at(image, x, y);
          if (gval < best) {
            best = gval;
            bx = x;
            by = y;
          }
        }
      }
      const Lab c = image.pixel(bx, by);
      centers.push_back({c.l, c.a, c.b, double(bx), double(by)});
    }
  }
  return centers;
}

void update_centers(const ImageLab& image, const std::vector<int>& labels,
                    std::vector<kernels::SlicCenter>& centers) {
  const std::size_t k = centers.size();
  std::vector<std::array<double, 5>> sums(k, std::array<double, 5>{});
  std::vector<std::size_t> counts(k, 0);
  const int w = image.width;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t c = std::size_t(labels[i]);
    const Lab p = image.pixel(i);
    auto& s = sums[c];
    s[0] += p.l;
    s[1] += p.a;
    s[2] += p.b;
    s[3] += double(i % std::size_t(w));
    s[4] += double(i / std::size_t(w));
    ++counts[c];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    const double n = double(counts[c]);
    centers[c] = {sums[c][0] / n, sums[c][1] / n, sums[c][2] / n, sums[c][3] / n, sums[c][4] / n};
  }
}

}  // namespace

SuperpixelLayer slic_segment(const ImageLab& image, int k_target, double compactness,
                             int max_iters, Exec exec) {
  if (image.empty()) throw ParameterError("slic: empty image");
  if (k_target < 1) throw ParameterError("slic: k_target must be >= 1");
  if (std::size_t(k_target) > image.pixel_count()) {
    throw ParameterError("slic: k_target exceeds pixel count");
  }
  if (!(compactness > 0.0)) throw ParameterError("slic: compactness must be > 0");
  if (max_iters < 0) throw ParameterError("slic: max_iters must be >= 0");

  const kernels::SlicGrid grid = kernels::slic_grid(image.width, image.height, k_target);
  auto centers = seed_centers(image, grid);

  std::vector<int> labels(image.pixel_count());
  for (int y = 0; y < image.height; ++y) {
    const int cy = std::min(grid.ny - 1, int(std::floor(y / grid.cell_h)));
    for (int x = 0; x < image.width; ++x) {
      const int cx = std::min(grid.nx - 1, int(std::floor(x / grid.cell_w)));
      labels[std::size_t(y) * image.width + x] = cy * grid.nx + cx;
    }
  }

  std::vector<int> previous;
  for (int it = 0; it < max_iters; ++it) {
    previous = labels;
    if (exec == Exec::kParallel) {
      kernels::slic_assign_parallel(image, centers, grid, compactness, labels);
    } else {
      kernels::slic_assign_serial(image, centers, grid, compactness, labels);
    }
    update_centers(image, labels, centers);
    if (labels == previous) break;
  }

  return make_layer(image, kernels::enforce_connectivity(image.width, image.height, labels));
}

MultiLayerSuperpixels stack_layers(std::vector<SuperpixelLayer> layers) {
  MultiLayerSuperpixels out;
  out.offsets.push_back(0);
  for (const auto& l : layers) out.offsets.push_back(out.offsets.back() + l.size());
  out.layers = std::move(layers);
  return out;
}

MultiLayerSuperpixels build_multilayer(const ImageLab& image, std::span<const int> granularities,
                                       double compactness, int max_iters, Exec exec) {
  if (granularities.empty()) throw ParameterError("superpixels: empty granularity list");
  for (std::size_t i = 1; i < granularities.size(); ++i) {
    if (granularities[i] >= granularities[i - 1]) {
      throw ParameterError("superpixels: granularities must be strictly decreasing");
    }
  }
  std::vector<SuperpixelLayer> layers;
  layers.reserve(granularities.size());
  for (int k : granularities) layers.push_back(slic_segment(image, k, compactness, max_iters, exec));
  return stack_layers(std::move(layers));
}

}  // namespace partctx
