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


// Serial reference kernels against their OpenMP counterparts.
//
//   ./partctx_bench --benchmark_filter=Slic
//
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "partctx/graph.hpp"
#include "partctx/parallel.hpp"
#include "partctx/solver.hpp"
#include "partctx/superpixels.hpp"
#include "partctx/synth.hpp"

namespace {

using namespace partctx;

const SyntheticScene& scene(int size) {
  static std::vector<std::pair<int, SyntheticScene>> cache;
  for (const auto& [s, sc] : cache) {
    if (s == size) return sc;
  }
  cache.emplace_back(size, synth(1, 3, size, 0.3));
  return cache.back().second;
}

Exec exec_of(const benchmark::State& state) {
  return state.range(1) ? Exec::kParallel : Exec::kSerial;
}

void label_run(benchmark::State& state) {
  state.SetLabel(exec_of(state) == Exec::kParallel
                     ? "parallel x" + std::to_string(max_threads())
                     : "serial");
}

void BM_SlicAssign(benchmark::State& state) {
  const ImageLab& img = scene(int(state.range(0))).image;
  const kernels::SlicGrid grid = kernels::slic_grid(img.width, img.height, 400);
  std::vector<kernels::SlicCenter> centers;
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int x = int((i + 0.5) * grid.cell_w), y = int((j + 0.5) * grid.cell_h);
      const Lab c = img.pixel(x, y);
      centers.push_back({c.l, c.a, c.b, double(x), double(y)});
    }
  }
  std::vector<int> labels(img.pixel_count(), 0);
  const bool parallel = exec_of(state) == Exec::kParallel;
  for (auto _ : state) {
    if (parallel) {
      kernels::slic_assign_parallel(img, centers, grid, 10.0, labels);
    } else {
      kernels::slic_assign_serial(img, centers, grid, 10.0, labels);
    }
    benchmark::DoNotOptimize(labels.data());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(img.pixel_count()));
  label_run(state);
}

void BM_Spmv(benchmark::State& state) {
  const ImageLab& img = scene(int(state.range(0))).image;
  const CsrMatrix w = build_pixel_edges(img, Exec::kSerial);
  std::vector<double> x(std::size_t(w.cols()), 0.5), y(std::size_t(w.rows()));
  const bool parallel = exec_of(state) == Exec::kParallel;
  for (auto _ : state) {
    if (parallel) {
      kernels::spmv_parallel(w, x, y);
    } else {
      kernels::spmv_serial(w, x, y);
    }
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(w.nnz()));
  label_run(state);
}

void BM_PixelEdges(benchmark::State& state) {
  const ImageLab& img = scene(int(state.range(0))).image;
  for (auto _ : state) benchmark::DoNotOptimize(build_pixel_edges(img, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * std::int64_t(img.pixel_count()));
  label_run(state);
}

void BM_PosePixelEdges(benchmark::State& state) {
  const ImageLab& img = scene(int(state.range(0))).image;
  const auto sp = build_multilayer(img, std::vector<int>{400, 100}, 10.0, 10, Exec::kSerial);
  for (auto _ : state) {
    const auto models = fit_color_models(sp, img, exec_of(state));
    benchmark::DoNotOptimize(build_pose_pixel_edges(sp, models, img, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(img.pixel_count()));
  label_run(state);
}

void BM_SolveLabel(benchmark::State& state) {
  const SyntheticScene& s = scene(int(state.range(0)));
  const auto sp = build_multilayer(s.image, std::vector<int>{400, 100}, 10.0, 10, Exec::kSerial);
  const JointSystem sys = build_system(build_graph(s.image, sp, Exec::kSerial), SolverParams{});
  std::vector<double> zt(std::size_t(sys.size()), 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(solve_label(sys, zt, exec_of(state)));
  label_run(state);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int size : {128, 256, 512}) {
    for (int parallel : {0, 1}) b->Args({size, parallel});
  }
  b->ArgNames({"size", "parallel"})->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_SlicAssign)->Apply(sizes);
BENCHMARK(BM_Spmv)->Apply(sizes);
BENCHMARK(BM_PixelEdges)->Apply(sizes);
BENCHMARK(BM_PosePixelEdges)->Apply(sizes);
BENCHMARK(BM_SolveLabel)->Apply(sizes);

BENCHMARK_MAIN();
