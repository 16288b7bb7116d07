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


#ifndef PARTCTX_POSE_CONTEXT_HPP_
#define PARTCTX_POSE_CONTEXT_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "partctx/skeleton.hpp"
#include "partctx/superpixels.hpp"

namespace partctx {

// Superpixels (global ids, ascending) touched by the rasterized skeleton
// lines of one label.
struct SeedSet {
  int label = 0;
  std::vector<int> superpixels;
};

// Initial superpixel likelihoods: n_superpixels x n_labels, row-major.
struct PoseContext {
  int n_superpixels = 0;
  int n_labels = 0;
  std::vector<double> values;

  double at(int m, int l) const { return values[std::size_t(m) * n_labels + l]; }
  double& at(int m, int l) { return values[std::size_t(m) * n_labels + l]; }
};

// Integer pixel coordinates of the segment from a to b, both endpoints
// included (Bresenham on the pixels containing the endpoints).
std::vector<std::pair<int, int>> rasterize_segment(Point2 a, Point2 b);

// One SeedSet per label present in the skeleton, sorted by label. Lines
// sharing a label are merged.
std::vector<SeedSet> rasterize_skeleton(const Skeleton& skeleton, const MultiLayerSuperpixels& sp);

// Rounding quantum for a layer's edge costs: 2^(e-30), where 2^e <= largest
// adjacent mean-color distance < 2^(e+1); 1 when every distance is 0. Path
// sums of quantized costs are exact in double precision, and scaling all
// colors by a power of two scales the quantum (and every distance) by the
// same factor.
double geodesic_quantum(const SuperpixelLayer& layer);

// Euclidean distance of mean Lab colors rounded to a multiple of `quantum`.
double geodesic_edge_cost(const Lab& a, const Lab& b, double quantum);

// Multi-source Dijkstra over the layer's 8-contact adjacency graph. Returns
// +inf for superpixels unreachable from every seed.
std::vector<double> geodesic_distances(const SuperpixelLayer& layer, std::span<const int> seeds);

// exp(-beta d^2). Throws ParameterError for beta < 0.
double pose_likelihood(double d, double beta);

// Part columns: exp(-beta d_geo^2) from the label's seeds within each layer;
// labels without skeleton lines get 0. Background column: 1 - max part.
PoseContext build_pose_context(const Skeleton& skeleton, const MultiLayerSuperpixels& sp,
                               int n_labels, double beta);

}  // namespace partctx

#endif  // PARTCTX_POSE_CONTEXT_HPP_
