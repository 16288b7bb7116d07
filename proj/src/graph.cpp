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


#include "partctx/graph.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "partctx/error.hpp"

namespace partctx {
namespace {

// 8-neighbour offsets in ascending column order.
constexpr int kNbrDx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kNbrDy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

double pixel_weight(double sq_dist, double mean_sq) {
  if (mean_sq <= 0.0) return 1.0;
  return std::exp(-sq_dist / (2.0 * mean_sq));
}

CsrMatrix pixel_edges_serial(const ImageLab& image, double mean_sq) {
  const int w = image.width, h = image.height;
  std::vector<Triplet> t;
  t.reserve(image.pixel_count() * 8);
  // Forward half of the neighbourhood: every unordered pair once.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int i = y * w + x;
      for (int k = 4; k < 8; ++k) {
        const int qx = x + kNbrDx[k], qy = y + kNbrDy[k];
        if (qx < 0 || qx >= w || qy >= h) continue;
        const int j = qy * w + qx;
        const double v = pixel_weight(squared_distance(image.pixel(i), image.pixel(j)), mean_sq);
        t.push_back({i, j, v});
        t.push_back({j, i, v});
      }
    }
  }
  const int n = int(image.pixel_count());
  return CsrMatrix::from_triplets(n, n, std::move(t));
}

CsrMatrix pixel_edges_parallel(const ImageLab& image, double mean_sq) {
  const int w = image.width, h = image.height;
  const int n = int(image.pixel_count());
  std::vector<std::size_t> row_ptr(std::size_t(n) + 1, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t c = 0;
      for (int k = 0; k < 8; ++k) {
        const int qx = x + kNbrDx[k], qy = y + kNbrDy[k];
        c += (qx >= 0 && qx < w && qy >= 0 && qy < h) ? 1 : 0;
      }
      row_ptr[std::size_t(y) * w + x + 1] = c;
    }
  }
  for (int i = 0; i < n; ++i) row_ptr[std::size_t(i) + 1] += row_ptr[std::size_t(i)];
  std::vector<int> cols(row_ptr.back());
  std::vector<double> vals(row_ptr.back());

#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int i = y * w + x;
      std::size_t o = row_ptr[std::size_t(i)];
      const Lab ci = image.pixel(std::size_t(i));
      for (int k = 0; k < 8; ++k) {
        const int qx = x + kNbrDx[k], qy = y + kNbrDy[k];
        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
        const int j = qy * w + qx;
        cols[o] = j;
        // Squared differences are exact under operand swap, so this matches
        // the serial builder for both orientations of the pair.
        vals[o] = pixel_weight(squared_distance(ci, image.pixel(std::size_t(j))), mean_sq);
        ++o;
      }
    }
  }
  return CsrMatrix::from_csr(n, n, std::move(row_ptr), std::move(cols), std::move(vals));
}

}  // namespace

double mean_neighbor_sq_distance(const ImageLab& image) {
  const int w = image.width, h = image.height;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int k = 4; k < 8; ++k) {
        const int qx = x + kNbrDx[k], qy = y + kNbrDy[k];
        if (qx < 0 || qx >= w || qy >= h) continue;
        sum += squared_distance(image.pixel(x, y), image.pixel(qx, qy));
        ++pairs;
      }
    }
  }
  return pairs == 0 ? 0.0 : sum / double(pairs);
}

CsrMatrix build_pixel_edges(const ImageLab& image, Exec exec) {
  if (image.empty()) throw ParameterError("pixel edges: empty image");
  const double mean_sq = mean_neighbor_sq_distance(image);
  return exec == Exec::kParallel ? pixel_edges_parallel(image, mean_sq)
                                 : pixel_edges_serial(image, mean_sq);
}

std::vector<ColorKde> fit_color_models(const MultiLayerSuperpixels& sp, const ImageLab& image,
                                       Exec exec) {
  std::vector<std::vector<Lab>> colors(std::size_t(sp.total()));
  for (std::size_t l = 0; l < sp.layers.size(); ++l) {
    const auto& layer = sp.layers[l];
    for (int m = 0; m < layer.size(); ++m) {
      auto& c = colors[std::size_t(sp.global_id(l, m))];
      c.reserve(layer.stats[std::size_t(m)].members.size());
      for (std::uint32_t p : layer.stats[std::size_t(m)].members) c.push_back(image.pixel(p));
    }
  }
  std::vector<ColorKde> models;
  models.reserve(colors.size());
  std::vector<std::optional<ColorKde>> slots(colors.size());
  const int n = int(colors.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int m = 0; m < n; ++m) slots[std::size_t(m)] = ColorKde::fit(colors[std::size_t(m)]);
  } else {
    for (int m = 0; m < n; ++m) slots[std::size_t(m)] = ColorKde::fit(colors[std::size_t(m)]);
  }
  for (auto& s : slots) models.push_back(std::move(*s));
  return models;
}

CsrMatrix build_pose_pixel_edges(const MultiLayerSuperpixels& sp,
                                 const std::vector<ColorKde>& models, const ImageLab& image,
                                 Exec exec) {
  if (int(models.size()) != sp.total()) throw DimensionError("pose-pixel edges: model count");
  const int n = int(image.pixel_count());
  const std::size_t n_layers = sp.layers.size();
  for (const auto& layer : sp.layers) {
    if (layer.assignment.size() != std::size_t(n)) {
      throw DimensionError("pose-pixel edges: layer size does not match image");
    }
  }
  std::vector<std::size_t> row_ptr(std::size_t(n) + 1);
  for (int i = 0; i <= n; ++i) row_ptr[std::size_t(i)] = std::size_t(i) * n_layers;
  std::vector<int> cols(std::size_t(n) * n_layers);
  std::vector<double> vals(cols.size());

  auto fill_row = [&](int i) {
    const Lab c = image.pixel(std::size_t(i));
    for (std::size_t l = 0; l < n_layers; ++l) {
      const int g = sp.global_id(l, sp.layers[l].assignment[std::size_t(i)]);
      cols[std::size_t(i) * n_layers + l] = g;
      vals[std::size_t(i) * n_layers + l] = pose_pixel_weight(models[std::size_t(g)].likelihood(c));
    }
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) fill_row(i);
  } else {
    for (int i = 0; i < n; ++i) fill_row(i);
  }
  return CsrMatrix::from_csr(n, sp.total(), std::move(row_ptr), std::move(cols), std::move(vals));
}

CsrMatrix build_superpixel_edges(const MultiLayerSuperpixels& sp) {
  std::vector<Triplet> t;
  for (std::size_t l = 0; l < sp.layers.size(); ++l) {
    const auto& layer = sp.layers[l];
    auto centroid_dist = [&](int m, int n) {
      const auto& a = layer.stats[std::size_t(m)];
      const auto& b = layer.stats[std::size_t(n)];
      return std::hypot(a.centroid_x - b.centroid_x, a.centroid_y - b.centroid_y);
    };
    double sum = 0.0;
    std::size_t pairs = 0;
    for (int m = 0; m < layer.size(); ++m) {
      for (int n : layer.adjacency[std::size_t(m)]) {
        if (n <= m) continue;
        sum += centroid_dist(m, n);
        ++pairs;
      }
    }
    const double mean = pairs == 0 ? 0.0 : sum / double(pairs);
    for (int m = 0; m < layer.size(); ++m) {
      for (int n : layer.adjacency[std::size_t(m)]) {
        if (n <= m) continue;
        const double ds = mean > 0.0 ? centroid_dist(m, n) / mean : 0.0;
        const double x2 = chi2(layer.stats[std::size_t(m)].histogram, layer.stats[std::size_t(n)].histogram);
        const double v = std::exp(-x2 * ds);
        const int gm = sp.global_id(l, m), gn = sp.global_id(l, n);
        t.push_back({gm, gn, v});
        t.push_back({gn, gm, v});
      }
    }
  }
  return CsrMatrix::from_triplets(sp.total(), sp.total(), std::move(t));
}

CsrMatrix row_normalize(const CsrMatrix& w) {
  std::vector<Triplet> t;
  t.reserve(w.nnz());
  for (int r = 0; r < w.rows(); ++r) {
    const double s = w.row_sum(r);
    if (s > 0.0) {
      const auto cols = w.row_cols(r);
      const auto vals = w.row_values(r);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (vals[k] != 0.0) t.push_back({r, cols[k], vals[k] / s});
      }
    } else if (w.rows() == w.cols()) {
      t.push_back({r, r, 1.0});
    } else {
      throw ParameterError("graph: zero-mass row in a rectangular block");
    }
  }
  return CsrMatrix::from_triplets(w.rows(), w.cols(), std::move(t));
}

PartGraph assemble(CsrMatrix w_xx, CsrMatrix w_xy, CsrMatrix w_yy) {
  if (w_xx.rows() != w_xx.cols() || w_yy.rows() != w_yy.cols() || w_xy.rows() != w_xx.rows() ||
      w_xy.cols() != w_yy.rows()) {
    throw DimensionError("graph: block dimensions are inconsistent");
  }
  PartGraph g;
  g.n_x = w_xx.rows();
  g.n_y = w_yy.rows();
  g.d_x.resize(std::size_t(g.n_x));
  g.d_y.resize(std::size_t(g.n_y));
  for (int i = 0; i < g.n_x; ++i) g.d_x[std::size_t(i)] = w_xx.row_sum(i);
  for (int m = 0; m < g.n_y; ++m) g.d_y[std::size_t(m)] = w_yy.row_sum(m);
  g.p_x = row_normalize(w_xx);
  g.p_y = row_normalize(w_yy);
  g.p_xy = row_normalize(w_xy);
  g.p_yx = row_normalize(w_xy.transpose());
  g.w_xx = std::move(w_xx);
  g.w_xy = std::move(w_xy);
  g.w_yy = std::move(w_yy);
  return g;
}

PartGraph build_graph(const ImageLab& image, const MultiLayerSuperpixels& sp, Exec exec) {
  auto models = fit_color_models(sp, image, exec);
  return assemble(build_pixel_edges(image, exec), build_pose_pixel_edges(sp, models, image, exec),
                  build_superpixel_edges(sp));
}

void PartGraph::dump(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  w_xx.write_coo(dir / "w_xx.txt");
  w_xy.write_coo(dir / "w_xy.txt");
  w_yy.write_coo(dir / "w_yy.txt");
  p_x.write_coo(dir / "p_x.txt");
  p_y.write_coo(dir / "p_y.txt");
  p_xy.write_coo(dir / "p_xy.txt");
  p_yx.write_coo(dir / "p_yx.txt");
}

}  // namespace partctx
