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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "partctx/error.hpp"
#include "partctx/graph.hpp"

namespace partctx {
namespace {

void expect_stochastic(const CsrMatrix& p) {
  for (int r = 0; r < p.rows(); ++r) ASSERT_NEAR(p.row_sum(r), 1.0, 1e-9) << "row " << r;
}

TEST(Sparse, TripletsSumDuplicates) {
  const CsrMatrix m = CsrMatrix::from_triplets(2, 3, {{1, 2, 1.0}, {0, 0, 2.0}, {1, 2, 0.5}});
  EXPECT_EQ(m.nnz(), 2u);
  EXPECT_EQ(m.at(1, 2), 1.5);
  EXPECT_EQ(m.at(0, 1), 0.0);
  const CsrMatrix t = m.transpose();
  EXPECT_EQ(t.rows(), 3);
  EXPECT_EQ(t.at(2, 1), 1.5);
  EXPECT_THROW(CsrMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), Error);
}

TEST(Sparse, SpmvKernelsAgree) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Triplet> t;
  for (int i = 0; i < 2000; ++i) t.push_back({int(rng() % 300), int(rng() % 300), u(rng)});
  const CsrMatrix m = CsrMatrix::from_triplets(300, 300, t);
  std::vector<double> x(300), a(300), b(300);
  for (double& v : x) v = u(rng);
  kernels::spmv_serial(m, x, a);
  kernels::spmv_parallel(m, x, b);
  EXPECT_EQ(a, b);
}

TEST(PixelEdges, ConstantImageWeightsOne) {
  ImageLab img(5, 4);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) img.set(i, {30, 5, 5});
  const CsrMatrix w = build_pixel_edges(img);
  // 8-neighborhood edge count of a 5x4 grid: 2*(4*4 + 5*3 + 2*4*3) directed entries.
  EXPECT_EQ(w.nnz(), std::size_t(2 * (4 * 4 + 5 * 3 + 2 * 4 * 3)));
  for (int r = 0; r < w.rows(); ++r) {
    for (double v : w.row_values(r)) EXPECT_EQ(v, 1.0);
  }
  EXPECT_EQ(w.at(0, 7), 0.0);  // (0,0) and (2,1) are not neighbors
}

TEST(PixelEdges, MeanNormalizedDistanceIsHalf) {
  std::mt19937_64 rng(2);
  const ImageLab img = to_lab(oracle::random_rgb(rng, 23, 17, 5));
  const CsrMatrix w = build_pixel_edges(img);
  EXPECT_TRUE(w.is_symmetric());
  // w = exp(-d^c) with d^c = |dc|^2 / (2 mean), so mean d^c over edges is 1/2.
  double sum = 0.0;
  std::size_t count = 0;
  for (const Triplet& t : w.triplets()) {
    sum += -std::log(t.value);
    ++count;
  }
  EXPECT_NEAR(sum / double(count), 0.5, 1e-9);
}

TEST(PixelEdges, SerialAndParallelAgree) {
  std::mt19937_64 rng(3);
  const ImageLab img = to_lab(oracle::random_rgb(rng, 31, 19, 5));
  const CsrMatrix a = build_pixel_edges(img, Exec::kSerial);
  const CsrMatrix b = build_pixel_edges(img, Exec::kParallel);
  EXPECT_EQ(oracle::to_dense(a), oracle::to_dense(b));
  EXPECT_EQ(a.nnz(), b.nnz());
}

TEST(PosePixel, WeightFormula) {
  EXPECT_EQ(pose_pixel_weight(1.0), 1.0);
  EXPECT_NEAR(pose_pixel_weight(0.0), std::exp(-1.0), 1e-12);
  EXPECT_NEAR(pose_pixel_weight(0.0), 0.367879441171442, 1e-12);
}

TEST(PosePixel, OneEntryPerLayer) {
  std::mt19937_64 rng(4);
  const ImageLab img = to_lab(oracle::random_rgb(rng, 20, 20, 4));
  const auto sp = build_multilayer(img, std::vector<int>{25, 6}, 10.0, 10);
  const auto models = fit_color_models(sp, img);
  const CsrMatrix w = build_pose_pixel_edges(sp, models, img);
  EXPECT_EQ(w.rows(), 400);
  EXPECT_EQ(w.cols(), sp.total());
  for (int i = 0; i < 400; ++i) {
    ASSERT_EQ(w.row_cols(i).size(), 2u);
    EXPECT_EQ(w.row_cols(i)[0], sp.layers[0].assignment[std::size_t(i)]);
    EXPECT_EQ(w.row_cols(i)[1], sp.global_id(1, sp.layers[1].assignment[std::size_t(i)]));
    for (double v : w.row_values(i)) {
      EXPECT_GE(v, std::exp(-1.0) - 1e-15);
      EXPECT_LE(v, 1.0);
    }
  }
  const CsrMatrix ws = build_pose_pixel_edges(sp, fit_color_models(sp, img, Exec::kSerial), img,
                                              Exec::kSerial);
  EXPECT_EQ(oracle::to_dense(w), oracle::to_dense(ws));
}

TEST(SuperpixelEdges, IdenticalAndDisjointHistograms) {
  // Three vertical strips: left and middle share a color, right differs.
  ImageLab img(6, 2);
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 6; ++x) {
      img.set(std::size_t(y) * 6 + x, x < 4 ? Lab{20, 0, 0} : Lab{80, 50, 50});
    }
  }
  std::vector<SuperpixelLayer> layers;
  layers.push_back(make_layer(img, {0, 0, 1, 1, 2, 2, 0, 0, 1, 1, 2, 2}));
  const auto sp = stack_layers(std::move(layers));
  const CsrMatrix w = build_superpixel_edges(sp);
  // Centroid distances 2 and 2, so the mean adjacent distance is 2 and d^s = 1.
  EXPECT_NEAR(w.at(0, 1), 1.0, 1e-12);
  EXPECT_NEAR(w.at(1, 2), std::exp(-1.0), 1e-9);
  EXPECT_EQ(w.at(0, 2), 0.0);
  EXPECT_TRUE(w.is_symmetric());
}

TEST(SuperpixelEdges, NoCrossLayerEdges) {
  std::mt19937_64 rng(5);
  const ImageLab img = to_lab(oracle::random_rgb(rng, 24, 24, 4));
  const auto sp = build_multilayer(img, std::vector<int>{20, 5}, 10.0, 10);
  const CsrMatrix w = build_superpixel_edges(sp);
  EXPECT_TRUE(w.is_symmetric());
  for (const Triplet& t : w.triplets()) {
    EXPECT_EQ(t.row < sp.offsets[1], t.col < sp.offsets[1]);
    EXPECT_NE(t.row, t.col);
  }
}

TEST(Assemble, ToyExample) {
  const CsrMatrix wxx = CsrMatrix::from_triplets(2, 2, {{0, 1, 0.5}, {1, 0, 0.5}});
  const CsrMatrix wxy = CsrMatrix::from_triplets(2, 1, {{0, 0, 1.0}, {1, 0, 1.0}});
  const CsrMatrix wyy(1, 1);
  const PartGraph g = assemble(wxx, wxy, wyy);
  EXPECT_EQ(oracle::to_dense(g.p_x), (oracle::Dense{{0, 1}, {1, 0}}));
  EXPECT_EQ(oracle::to_dense(g.p_xy), (oracle::Dense{{1}, {1}}));
  EXPECT_EQ(oracle::to_dense(g.p_yx), (oracle::Dense{{0.5, 0.5}}));
  EXPECT_EQ(oracle::to_dense(g.p_y), (oracle::Dense{{1}}));  // self-loop fallback
  EXPECT_EQ(g.d_x, (std::vector<double>{0.5, 0.5}));
}

TEST(Assemble, RowNormalizeFallbacks) {
  const CsrMatrix square(3, 3);
  const CsrMatrix p = row_normalize(square);
  for (int r = 0; r < 3; ++r) EXPECT_EQ(p.at(r, r), 1.0);
  EXPECT_THROW(row_normalize(CsrMatrix(2, 3)), ParameterError);
  EXPECT_THROW(assemble(CsrMatrix(2, 2), CsrMatrix(3, 1), CsrMatrix(1, 1)), DimensionError);
}

TEST(Graph, FullBuildInvariants) {
  std::mt19937_64 rng(6);
  const ImageLab img = to_lab(oracle::random_rgb(rng, 40, 30, 6));
  const auto sp = build_multilayer(img, std::vector<int>{60, 15}, 10.0, 10);
  const PartGraph g = build_graph(img, sp);
  EXPECT_EQ(g.n_x, 1200);
  EXPECT_EQ(g.n_y, sp.total());
  EXPECT_TRUE(g.w_xx.is_symmetric());
  EXPECT_TRUE(g.w_yy.is_symmetric());
  expect_stochastic(g.p_x);
  expect_stochastic(g.p_y);
  expect_stochastic(g.p_xy);
  expect_stochastic(g.p_yx);
  const PartGraph gs = build_graph(img, sp, Exec::kSerial);
  EXPECT_EQ(oracle::to_dense(g.p_x), oracle::to_dense(gs.p_x));
  EXPECT_EQ(oracle::to_dense(g.w_xy), oracle::to_dense(gs.w_xy));
}

}  // namespace
}  // namespace partctx
