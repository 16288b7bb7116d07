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


// partctx command-line front end.
//
//   partctx synth           --out DIR [--seed S --parts N --size PX --noise R]
//   partctx superpixels     --image IMG --out DIR
//   partctx pose-context    --image IMG --skeleton S.json --n-labels N --out DIR [--superpixels DIR]
//   partctx refine          --image IMG --likelihoods U0.pft --skeleton S.json --out DIR
//   partctx eval            --pred P.png --gt G.png
//   partctx attention-check --op semantic|contour|fusion --a A.pft --b B.pft --out O.pft
//
// Exit codes: 0 ok, 1 internal failure, 2 input error, 3 solver did not converge.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "partctx/attention.hpp"
#include "partctx/config.hpp"
#include "partctx/image_io.hpp"
#include "partctx/pipeline.hpp"
#include "partctx/pose_context.hpp"
#include "partctx/superpixels.hpp"
#include "partctx/synth.hpp"

namespace {

using namespace partctx;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;

// Config file plus command-line overrides; a flag given on the command line
// replaces the file's value.
struct ConfigFlags {
  std::string path;
  std::vector<int> granularities;
  double compactness = 0, beta = 0, lambda_x = 0, lambda_y = 0, pi = 0, psi = 0, tol = 0;
  int slic_iters = 0, max_iters = 0;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, CLI::Option*>> opts;

  void attach(CLI::App* app, bool with_seed) {
    app->add_option("--config", path, "JSON configuration file")->check(CLI::ExistingFile);
    opts = {
        {"granularities", app->add_option("--granularities", granularities,
                                          "superpixel counts per layer, strictly decreasing")},
        {"compactness", app->add_option("--compactness", compactness)},
        {"slic_iters", app->add_option("--slic-iters", slic_iters)},
        {"beta", app->add_option("--beta", beta, "pose-context decay")},
        {"lambda_x", app->add_option("--lambda-x", lambda_x)},
        {"lambda_y", app->add_option("--lambda-y", lambda_y)},
        {"pi", app->add_option("--pi", pi)},
        {"psi", app->add_option("--psi", psi)},
        {"tol", app->add_option("--tol", tol)},
        {"max_iters", app->add_option("--max-iters", max_iters, "0 picks the default bound")},
    };
    if (with_seed) opts.push_back({"seed", app->add_option("--seed", seed)});
  }

  PipelineConfig resolve() const {
    PipelineConfig c = path.empty() ? PipelineConfig{} : read_config(path);
    for (const auto& [key, opt] : opts) {
      if (opt->count() == 0) continue;
      if (key == "granularities") c.granularities = granularities;
      if (key == "compactness") c.compactness = compactness;
      if (key == "slic_iters") c.slic_iters = slic_iters;
      if (key == "beta") c.solver.beta = beta;
      if (key == "lambda_x") c.solver.lambda_x = lambda_x;
      if (key == "lambda_y") c.solver.lambda_y = lambda_y;
      if (key == "pi") c.solver.pi = pi;
      if (key == "psi") c.solver.psi = psi;
      if (key == "tol") c.solver.tol = tol;
      if (key == "max_iters") c.solver.max_iters = max_iters;
      if (key == "seed") c.seed = seed;
    }
    validate(c);
    return c;
  }
};

Exec exec_mode(bool serial) { return serial ? Exec::kSerial : Exec::kParallel; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

// ---- synth ----------------------------------------------------------------

struct SynthArgs {
  ConfigFlags config;
  int parts = 3;
  int size = 128;
  double noise = 0.3;
  std::string out;
};

int run_synth(const SynthArgs& a) {
  const PipelineConfig config = a.config.resolve();
  const SyntheticScene scene = synth(config.seed, a.parts, a.size, a.noise);
  fs::create_directories(a.out);
  const fs::path dir(a.out);
  write_png_rgb(scene.rgb, dir / "image.png");
  write_label_map(scene.gt, dir / "gt.png");
  write_skeleton(scene.skeleton, dir / "skeleton.json");
  write_tensor(scene.noisy_likelihoods, dir / "likelihoods.pft");
  std::cout << "wrote synthetic scene (seed " << config.seed << ") to " << dir.string() << "\n";
  return kExitOk;
}

// ---- superpixels ----------------------------------------------------------

struct SuperpixelArgs {
  ConfigFlags config;
  std::string image, out;
  bool serial = false;
};

int run_superpixels(const SuperpixelArgs& a) {
  const PipelineConfig config = a.config.resolve();
  const RgbImage rgb = read_png_rgb(a.image);
  const ImageLab image = to_lab(rgb);
  const MultiLayerSuperpixels sp = build_multilayer(image, config.granularities, config.compactness,
                                                    config.slic_iters, exec_mode(a.serial));
  const fs::path dir(a.out);
  write_superpixels(sp, dir);
  for (std::size_t l = 0; l < sp.layers.size(); ++l) {
    write_png_rgb(boundary_overlay(rgb, sp.layers[l].assignment),
                  dir / ("layer" + std::to_string(l) + "_boundaries.png"));
    std::cout << "layer " << l << ": " << sp.layers[l].size() << " superpixels\n";
  }
  return kExitOk;
}

// ---- pose-context ---------------------------------------------------------

struct PoseArgs {
  ConfigFlags config;
  std::string image, skeleton, superpixels, out;
  int n_labels = 0;
  bool serial = false;
};

int run_pose_context(const PoseArgs& a) {
  const PipelineConfig config = a.config.resolve();
  const ImageLab image = load_image(a.image);
  const Skeleton skeleton = read_skeleton(a.skeleton);
  validate(skeleton, ImageSize{image.width, image.height}, a.n_labels);
  const MultiLayerSuperpixels sp =
      a.superpixels.empty() ? build_multilayer(image, config.granularities, config.compactness,
                                               config.slic_iters, exec_mode(a.serial))
                            : read_superpixels(image, a.superpixels);
  const PoseContext ctx = build_pose_context(skeleton, sp, a.n_labels, config.solver.beta);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_pft(pose_context_tensor(ctx), dir / "pose_context.pft");
  for (std::size_t layer = 0; layer < sp.layers.size(); ++layer) {
    const auto& ly = sp.layers[layer];
    for (int l = 0; l < ctx.n_labels; ++l) {
      std::vector<double> values(ly.assignment.size());
      for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = ctx.at(sp.global_id(layer, ly.assignment[i]), l);
      }
      write_png_rgb(heat_map(ly.width, ly.height, values),
                    dir / ("layer" + std::to_string(layer) + "_label" + std::to_string(l) + ".png"));
    }
  }
  std::cout << "pose context: " << ctx.n_superpixels << " superpixels x " << ctx.n_labels
            << " labels\n";
  return kExitOk;
}

// ---- refine ---------------------------------------------------------------

struct RefineArgs {
  ConfigFlags config;
  std::string image, likelihoods, skeleton, out, superpixels, convergence_log, dump_graph;
  bool serial = false;
};

int run_refine_cmd(const RefineArgs& a) {
  const PipelineConfig config = a.config.resolve();
  const RgbImage rgb = read_png_rgb(a.image);
  const ImageLab image = to_lab(rgb);
  const LikelihoodStack u0 = read_tensor(a.likelihoods);
  const Skeleton skeleton = read_skeleton(a.skeleton);

  RefineOptions options;
  options.exec = exec_mode(a.serial);
  std::optional<MultiLayerSuperpixels> sp;
  if (!a.superpixels.empty()) {
    sp = read_superpixels(image, a.superpixels);
    options.superpixels = &*sp;
  }
  if (!a.dump_graph.empty()) options.graph_dump_dir = fs::path(a.dump_graph);

  const RefineOutput out = run_refine(config, image, u0, skeleton, options);
  write_refine_outputs(out, rgb, a.out);

  if (!a.convergence_log.empty()) {
    std::string lines;
    for (int l = 0; l < out.refined.n_labels; ++l) {
      const SolveReport& r = out.refined.reports[std::size_t(l)];
      nlohmann::json j = {{"label", l},         {"iterations", r.iterations},
                          {"converged", r.converged}, {"residual", r.residual},
                          {"step", r.step},     {"max_ratio", r.max_ratio}};
      lines += j.dump() + "\n";
    }
    write_text(a.convergence_log, lines);
  }

  for (const auto& t : out.timings) {
    std::cout << t.stage << ": " << t.seconds << " s\n";
  }
  if (!out.converged()) {
    std::cerr << "error: solver did not reach tol " << config.solver.tol
              << " for every label; outputs written to " << a.out << "\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string pred, gt;
  int n_labels = 0;
};

int run_eval_cmd(const EvalArgs& a) {
  std::cout << to_json(run_eval(a.pred, a.gt, a.n_labels)) << "\n";
  return kExitOk;
}

// ---- attention-check ------------------------------------------------------

struct AttentionArgs {
  std::string op, a, b, out;
};

int run_attention(const AttentionArgs& args) {
  const FeatureMap a = to_feature_map(read_pft(args.a));
  const FeatureMap b = to_feature_map(read_pft(args.b));
  FeatureMap result;
  if (args.op == "semantic") {
    result = semantic_attention(a, b);
  } else if (args.op == "contour") {
    result = contour_attention(a, b);
  } else {
    result = attention_fusion(a, b);
  }
  write_pft(to_tensor(result), args.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Part segmentation refinement with pose context"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "generate a seeded synthetic scene");
  synth_args.config.attach(synth_cmd, true);
  synth_cmd->add_option("--parts", synth_args.parts, "number of body parts")->check(CLI::Range(1, 8));
  synth_cmd->add_option("--size", synth_args.size, "image side in pixels")
      ->check(CLI::Range(32, 4096));
  synth_cmd->add_option("--noise", synth_args.noise, "likelihood corruption rate in [0,1)");
  synth_cmd->add_option("--out", synth_args.out)->required();

  SuperpixelArgs sp_args;
  auto* sp_cmd = app.add_subcommand("superpixels", "multi-layer SLIC segmentation");
  sp_args.config.attach(sp_cmd, false);
  sp_cmd->add_option("--image", sp_args.image)->required()->check(CLI::ExistingFile);
  sp_cmd->add_option("--out", sp_args.out)->required();
  sp_cmd->add_flag("--serial", sp_args.serial, "use the single-threaded kernels");

  PoseArgs pose_args;
  auto* pose_cmd = app.add_subcommand("pose-context", "superpixel part likelihoods from a skeleton");
  pose_args.config.attach(pose_cmd, false);
  pose_cmd->add_option("--image", pose_args.image)->required()->check(CLI::ExistingFile);
  pose_cmd->add_option("--skeleton", pose_args.skeleton)->required()->check(CLI::ExistingFile);
  pose_cmd->add_option("--n-labels", pose_args.n_labels, "label count including background")
      ->required()
      ->check(CLI::Range(2, 256));
  pose_cmd->add_option("--superpixels", pose_args.superpixels, "reuse a superpixels output dir")
      ->check(CLI::ExistingDirectory);
  pose_cmd->add_option("--out", pose_args.out)->required();
  pose_cmd->add_flag("--serial", pose_args.serial);

  RefineArgs ref_args;
  auto* ref_cmd = app.add_subcommand("refine", "full refinement pipeline");
  ref_args.config.attach(ref_cmd, false);
  ref_cmd->add_option("--image", ref_args.image)->required()->check(CLI::ExistingFile);
  ref_cmd->add_option("--likelihoods", ref_args.likelihoods, "H x W x N PFT")
      ->required()
      ->check(CLI::ExistingFile);
  ref_cmd->add_option("--skeleton", ref_args.skeleton)->required()->check(CLI::ExistingFile);
  ref_cmd->add_option("--out", ref_args.out)->required();
  ref_cmd->add_option("--superpixels", ref_args.superpixels, "reuse a superpixels output dir")
      ->check(CLI::ExistingDirectory);
  ref_cmd->add_option("--convergence-log", ref_args.convergence_log,
                      "write per-label solver statistics as JSON lines");
  ref_cmd->add_option("--dump-graph", ref_args.dump_graph, "write graph blocks as COO text");
  ref_cmd->add_flag("--serial", ref_args.serial);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "mean IoU of a predicted label map");
  eval_cmd->add_option("--pred", eval_args.pred)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--gt", eval_args.gt)->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--n-labels", eval_args.n_labels, "0 infers from the maps");

  AttentionArgs att_args;
  auto* att_cmd = app.add_subcommand("attention-check", "reference attention ops on PFT maps");
  att_cmd->add_option("--op", att_args.op)
      ->required()
      ->check(CLI::IsMember({"semantic", "contour", "fusion"}));
  att_cmd->add_option("--a", att_args.a, "current (or semantic) map")
      ->required()
      ->check(CLI::ExistingFile);
  att_cmd->add_option("--b", att_args.b, "companion (or contour) map")
      ->required()
      ->check(CLI::ExistingFile);
  att_cmd->add_option("--out", att_args.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*synth_cmd) return run_synth(synth_args);
    if (*sp_cmd) return run_superpixels(sp_args);
    if (*pose_cmd) return run_pose_context(pose_args);
    if (*ref_cmd) return run_refine_cmd(ref_args);
    if (*eval_cmd) return run_eval_cmd(eval_args);
    if (*att_cmd) return run_attention(att_args);
  } catch (const StageError& e) {
    std::cerr << "error [" << e.stage() << "]: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
