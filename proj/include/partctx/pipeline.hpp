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


#ifndef PARTCTX_PIPELINE_HPP_
#define PARTCTX_PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "partctx/config.hpp"
#include "partctx/error.hpp"
#include "partctx/graph.hpp"
#include "partctx/image_io.hpp"
#include "partctx/labeling.hpp"
#include "partctx/pft.hpp"
#include "partctx/pose_context.hpp"
#include "partctx/skeleton.hpp"
#include "partctx/solver.hpp"
#include "partctx/superpixels.hpp"

namespace partctx {

// Error raised inside a pipeline stage, tagged with the stage name.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RefineOutput {
  MultiLayerSuperpixels superpixels;
  PoseContext pose_context;
  RefinedLikelihoods refined;
  LabelMap labels;
  std::vector<StageTiming> timings;
  std::vector<StationarityResidual> stationarity;  // per label
  nlohmann::json metadata;

  bool converged() const { return refined.converged(); }
};

struct RefineOptions {
  Exec exec = Exec::kParallel;
  LabelObserver observer;
  // Reuse a previously computed superpixel stage instead of running SLIC.
  const MultiLayerSuperpixels* superpixels = nullptr;
  // Dump the graph blocks as coordinate lists into this directory.
  std::optional<std::filesystem::path> graph_dump_dir;
};

// superpixels -> pose context -> color models and graph -> solver ->
// posterior and argmax. Stage failures surface as StageError.
RefineOutput run_refine(const PipelineConfig& config, const ImageLab& image,
                        const LikelihoodStack& likelihoods, const Skeleton& skeleton,
                        const RefineOptions& options = {});

// Refined U (H x W x N) clamped to [0, 1] for storage.
LikelihoodStack refined_stack(const RefineOutput& out, int width, int height);
// Refined V as an (N_Y x N) tensor.
Tensor refined_superpixel_tensor(const RefineOutput& out);
Tensor pose_context_tensor(const PoseContext& ctx);

// Writes u_refined.pft, v_refined.pft, labels.png, overlay.png, meta.json.
void write_refine_outputs(const RefineOutput& out, const RgbImage& rgb,
                          const std::filesystem::path& dir);

// Superpixel stage persistence: one H x W x 1 PFT of ids per layer.
void write_superpixels(const MultiLayerSuperpixels& sp, const std::filesystem::path& dir);
MultiLayerSuperpixels read_superpixels(const ImageLab& image, const std::filesystem::path& dir);

IouReport run_eval(const std::filesystem::path& pred_path, const std::filesystem::path& gt_path,
                   int n_labels = 0);

}  // namespace partctx

#endif  // PARTCTX_PIPELINE_HPP_
