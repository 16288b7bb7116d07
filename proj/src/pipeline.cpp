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


#include "partctx/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

namespace partctx {
namespace {

using nlohmann::json;

template <class F>
auto run_stage(const char* name, std::vector<StageTiming>& timings, F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  try {
    auto result = fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    timings.push_back({name, dt.count()});
    return result;
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::filesystem::path layer_path(const std::filesystem::path& dir, std::size_t layer) {
  return dir / ("layer" + std::to_string(layer) + "_assignment.pft");
}

json report_json(const SolveReport& r) {
  return {{"iterations", r.iterations}, {"converged", r.converged}, {"step", r.step},
          {"residual", r.residual},     {"max_ratio", r.max_ratio}, {"max_clamp", r.max_clamp}};
}

}  // namespace

RefineOutput run_refine(const PipelineConfig& config, const ImageLab& image,
                        const LikelihoodStack& likelihoods, const Skeleton& skeleton,
                        const RefineOptions& options) {
  RefineOutput out;
  auto& timings = out.timings;

  run_stage("input", timings, [&] {
    validate(config);
    validate(likelihoods);
    if (image.empty()) throw FormatError("empty image");
    if (likelihoods.width != image.width || likelihoods.height != image.height) {
      throw DimensionError("likelihood stack is " + std::to_string(likelihoods.width) + "x" +
                           std::to_string(likelihoods.height) + ", image is " +
                           std::to_string(image.width) + "x" + std::to_string(image.height));
    }
    validate(skeleton, ImageSize{image.width, image.height}, likelihoods.n_labels);
    return 0;
  });

  out.superpixels = run_stage("superpixels", timings, [&] {
    if (options.superpixels != nullptr) {
      for (const auto& layer : options.superpixels->layers) {
        if (layer.width != image.width || layer.height != image.height) {
          throw DimensionError("precomputed superpixels do not match the image size");
        }
      }
      return *options.superpixels;
    }
    return build_multilayer(image, config.granularities, config.compactness, config.slic_iters,
                            options.exec);
  });

  out.pose_context = run_stage("pose_context", timings, [&] {
    return build_pose_context(skeleton, out.superpixels, likelihoods.n_labels, config.solver.beta);
  });

  const PartGraph graph = run_stage("graph", timings, [&] {
    PartGraph g = build_graph(image, out.superpixels, options.exec);
    if (options.graph_dump_dir) g.dump(*options.graph_dump_dir);
    return g;
  });

  out.refined = run_stage("solver", timings, [&] {
    return refine(graph, config.solver, likelihoods, out.pose_context, options.exec,
                  options.observer);
  });

  out.labels = run_stage("labeling", timings, [&] {
    const Posterior post = posterior(image.width, image.height, out.refined.n_labels, out.refined.u);
    return argmax_labels(post);
  });

  // Stationarity of each label's solution, evaluated from the graph blocks.
  const int n = out.refined.n_labels;
  std::vector<double> u(std::size_t(out.refined.n_x)), v(std::size_t(out.refined.n_y));
  std::vector<double> ut(u.size()), vt(v.size());
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < out.refined.n_x; ++i) {
      u[std::size_t(i)] = out.refined.u_at(i, l);
      ut[std::size_t(i)] = likelihoods.at(std::size_t(i), l);
    }
    for (int m = 0; m < out.refined.n_y; ++m) {
      v[std::size_t(m)] = out.refined.v_at(m, l);
      vt[std::size_t(m)] = out.pose_context.at(m, l);
    }
    out.stationarity.push_back(stationarity_residual(graph, config.solver, u, v, ut, vt));
  }

  json meta;
  meta["config"] = json::parse(to_json(config));
  meta["image"] = {{"width", image.width}, {"height", image.height}};
  meta["n_labels"] = n;
  json layers = json::array();
  for (const auto& layer : out.superpixels.layers) layers.push_back(layer.size());
  meta["superpixels_per_layer"] = layers;
  meta["graph"] = {{"n_x", graph.n_x},
                   {"n_y", graph.n_y},
                   {"nnz_w_xx", graph.w_xx.nnz()},
                   {"nnz_w_xy", graph.w_xy.nnz()},
                   {"nnz_w_yy", graph.w_yy.nnz()}};
  const JointSystem sys = build_system(graph, config.solver);
  meta["solver"] = {{"max_iters", sys.max_iters}, {"contraction", sys.contraction}};
  json labels = json::array();
  for (int l = 0; l < n; ++l) {
    json entry = report_json(out.refined.reports[std::size_t(l)]);
    entry["label"] = l;
    entry["stationarity_pixel"] = out.stationarity[std::size_t(l)].pixel;
    entry["stationarity_superpixel"] = out.stationarity[std::size_t(l)].superpixel;
    labels.push_back(entry);
  }
  meta["convergence"] = labels;
  meta["converged"] = out.refined.converged();
  json t = json::object();
  for (const auto& s : timings) t[s.stage] = s.seconds;
  meta["timings_seconds"] = t;
  meta["threads"] = options.exec == Exec::kParallel ? max_threads() : 1;
  out.metadata = std::move(meta);
  return out;
}

LikelihoodStack refined_stack(const RefineOutput& out, int width, int height) {
  LikelihoodStack s(width, height, out.refined.n_labels);
  for (std::size_t k = 0; k < s.data.size(); ++k) {
    s.data[k] = float(std::clamp(out.refined.u[k], 0.0, 1.0));
  }
  return s;
}

Tensor refined_superpixel_tensor(const RefineOutput& out) {
  Tensor t;
  t.dims = {std::uint32_t(out.refined.n_y), std::uint32_t(out.refined.n_labels)};
  t.data.reserve(out.refined.v.size());
  for (double v : out.refined.v) t.data.push_back(float(std::clamp(v, 0.0, 1.0)));
  return t;
}

Tensor pose_context_tensor(const PoseContext& ctx) {
  Tensor t;
  t.dims = {std::uint32_t(ctx.n_superpixels), std::uint32_t(ctx.n_labels)};
  t.data.reserve(ctx.values.size());
  for (double v : ctx.values) t.data.push_back(float(v));
  return t;
}

void write_refine_outputs(const RefineOutput& out, const RgbImage& rgb,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_tensor(refined_stack(out, rgb.width, rgb.height), dir / "u_refined.pft");
  write_pft(refined_superpixel_tensor(out), dir / "v_refined.pft");
  write_label_map(out.labels, dir / "labels.png");
  write_png_rgb(label_overlay(rgb, out.labels), dir / "overlay.png");
  std::ofstream meta(dir / "meta.json", std::ios::trunc);
  if (!meta) throw IoError("cannot write " + (dir / "meta.json").string());
  meta << out.metadata.dump(2) << "\n";
}

void write_superpixels(const MultiLayerSuperpixels& sp, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (std::size_t l = 0; l < sp.layers.size(); ++l) {
    const auto& layer = sp.layers[l];
    Tensor t;
    t.dims = {std::uint32_t(layer.height), std::uint32_t(layer.width), 1};
    t.data.reserve(layer.assignment.size());
    for (int id : layer.assignment) t.data.push_back(float(id));
    write_pft(t, layer_path(dir, l));
  }
}

MultiLayerSuperpixels read_superpixels(const ImageLab& image, const std::filesystem::path& dir) {
  std::vector<SuperpixelLayer> layers;
  for (std::size_t l = 0; std::filesystem::exists(layer_path(dir, l)); ++l) {
    const Tensor t = read_pft(layer_path(dir, l));
    if (t.dims.size() != 3 || t.dims[2] != 1 || int(t.dims[0]) != image.height ||
        int(t.dims[1]) != image.width) {
      throw DimensionError("superpixel map " + layer_path(dir, l).string() +
                           " does not match the image");
    }
    std::vector<int> ids(t.data.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const float v = t.data[i];
      if (!(v >= 0.0f) || v != std::floor(v) || v > 16777216.0f) {
        throw FormatError("superpixel map holds a non-integer id");
      }
      ids[i] = int(v);
    }
    layers.push_back(make_layer(image, std::move(ids)));
  }
  if (layers.empty()) throw IoError("no superpixel layers found in " + dir.string());
  return stack_layers(std::move(layers));
}

IouReport run_eval(const std::filesystem::path& pred_path, const std::filesystem::path& gt_path,
                   int n_labels) {
  return miou(read_label_map(pred_path), read_label_map(gt_path), n_labels);
}

}  // namespace partctx
