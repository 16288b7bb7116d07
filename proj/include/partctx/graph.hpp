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


#ifndef PARTCTX_GRAPH_HPP_
#define PARTCTX_GRAPH_HPP_

#include <cmath>
#include <filesystem>
#include <vector>

#include "partctx/color.hpp"
#include "partctx/density.hpp"
#include "partctx/parallel.hpp"
#include "partctx/sparse.hpp"
#include "partctx/superpixels.hpp"

namespace partctx {

// Pixel (X) / superpixel (Y) graph with its weight blocks, degrees and
// row-stochastic transition blocks. W_yx is W_xy transposed.
struct PartGraph {
  int n_x = 0;
  int n_y = 0;
  CsrMatrix w_xx;
  CsrMatrix w_xy;
  CsrMatrix w_yy;
  std::vector<double> d_x;  // row sums of w_xx
  std::vector<double> d_y;  // row sums of w_yy
  CsrMatrix p_x;
  CsrMatrix p_y;
  CsrMatrix p_xy;
  CsrMatrix p_yx;

  // Writes one coordinate-list file per block into `dir`.
  void dump(const std::filesystem::path& dir) const;
};

// Mean squared Lab distance over all unordered 8-neighbour pixel pairs.
double mean_neighbor_sq_distance(const ImageLab& image);

// w_ij = exp(-|c_i - c_j|^2 / (2 <|c_i - c_j|^2>)) on the 8-neighbourhood. A
// constant image gives d^c = 0 and all weights 1.
CsrMatrix build_pixel_edges(const ImageLab& image, Exec exec = Exec::kParallel);

inline double pose_pixel_weight(double membership) { return std::exp(-(1.0 - membership)); }

// One color model per global superpixel, fitted on its member colors.
std::vector<ColorKde> fit_color_models(const MultiLayerSuperpixels& sp, const ImageLab& image,
                                       Exec exec = Exec::kParallel);

// w_im = exp(-(1 - Pr(x_i | y_m))) for the superpixel containing pixel i in
// each layer; one entry per pixel per layer.
CsrMatrix build_pose_pixel_edges(const MultiLayerSuperpixels& sp,
                                 const std::vector<ColorKde>& models, const ImageLab& image,
                                 Exec exec = Exec::kParallel);

// w_mn = exp(-chi2(h_m, h_n) d^s(m, n)) between 8-adjacent superpixels of
// the same layer, d^s being centroid distance over the layer's mean
// adjacent-centroid distance.
CsrMatrix build_superpixel_edges(const MultiLayerSuperpixels& sp);

// Row-normalises; rows with zero mass become a self-transition when the
// matrix is square and are an error otherwise.
CsrMatrix row_normalize(const CsrMatrix& w);

PartGraph assemble(CsrMatrix w_xx, CsrMatrix w_xy, CsrMatrix w_yy);

PartGraph build_graph(const ImageLab& image, const MultiLayerSuperpixels& sp,
                      Exec exec = Exec::kParallel);

}  // namespace partctx

#endif  // PARTCTX_GRAPH_HPP_
