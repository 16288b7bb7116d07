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


#ifndef PARTCTX_SUPERPIXELS_HPP_
#define PARTCTX_SUPERPIXELS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "partctx/color.hpp"
#include "partctx/parallel.hpp"

namespace partctx {

// Per-channel marginal histograms: 16 bins each for L in [0,100] and a, b in
// [-128,128), concatenated. Each pixel contributes 1/(3n) to one bin per
// channel, so the 48 bins sum to 1.
inline constexpr int kHistogramBinsPerChannel = 16;
inline constexpr int kHistogramSize = 3 * kHistogramBinsPerChannel;
using ColorHistogram = std::array<double, kHistogramSize>;

std::array<int, 3> histogram_bins(const Lab& c);

struct SuperpixelStats {
  std::size_t pixel_count = 0;
  Lab mean_lab;
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  ColorHistogram histogram{};
  std::vector<std::uint32_t> members;  // ascending pixel indices
};

// One over-segmentation of the image. Ids are contiguous 0..K-1.
struct SuperpixelLayer {
  int width = 0;
  int height = 0;
  std::vector<int> assignment;
  std::vector<SuperpixelStats> stats;
  // Superpixels whose member pixels touch in the 8-neighbourhood; each list
  // sorted ascending, no self entries.
  std::vector<std::vector<int>> adjacency;

  int size() const { return int(stats.size()); }
};

// Builds a layer from an arbitrary id map. Ids must be contiguous
// 0..K-1 with every id used; throws FormatError otherwise.
SuperpixelLayer make_layer(const ImageLab& image, std::vector<int> assignment);

// SLIC: k-means in (L, a, b, x, y) with the spatial term scaled by
// compactness / grid step, restricted search windows of two grid cells, then
// connectivity enforcement. Deterministic for fixed inputs.
SuperpixelLayer slic_segment(const ImageLab& image, int k_target, double compactness,
                             int max_iters, Exec exec = Exec::kParallel);

struct MultiLayerSuperpixels {
  std::vector<SuperpixelLayer> layers;
  std::vector<int> offsets;  // offsets[i] = global id of layer i's superpixel 0

  int total() const { return offsets.empty() ? 0 : offsets.back(); }
  int global_id(std::size_t layer, int local) const { return offsets[layer] + local; }
};

// Assembles layers into one global indexing (layer-major, local-id-minor).
MultiLayerSuperpixels stack_layers(std::vector<SuperpixelLayer> layers);

// One SLIC layer per granularity; granularities must be strictly decreasing.
MultiLayerSuperpixels build_multilayer(const ImageLab& image, std::span<const int> granularities,
                                       double compactness, int max_iters,
                                       Exec exec = Exec::kParallel);

namespace kernels {

struct SlicCenter {
  double l, a, b, x, y;
};

struct SlicGrid {
  int nx = 1;
  int ny = 1;
  double cell_w = 1.0;   // search half-window along x
  double cell_h = 1.0;   // search half-window along y
  double step = 1.0;     // spatial normaliser S
};

SlicGrid slic_grid(int width, int height, int k_target);

// One SLIC assignment sweep. Pixels outside every window keep their label.
// Ties resolve to the smaller center index. The serial variant is the
// classic center-by-center scan; the parallel variant gathers candidates per
// pixel. Both produce identical labels.
void slic_assign_serial(const ImageLab& image, const std::vector<SlicCenter>& centers,
                        const SlicGrid& grid, double compactness, std::vector<int>& labels);
void slic_assign_parallel(const ImageLab& image, const std::vector<SlicCenter>& centers,
                          const SlicGrid& grid, double compactness, std::vector<int>& labels);

// Relabels so that every label is a single 4-connected component: the
// largest component of each label keeps it, the others are merged into the
// largest adjacent superpixel. Returns the compacted id map.
std::vector<int> enforce_connectivity(int width, int height, const std::vector<int>& labels);

}  // namespace kernels
}  // namespace partctx

#endif  // PARTCTX_SUPERPIXELS_HPP_
