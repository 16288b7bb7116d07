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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "partctx/attention.hpp"
#include "partctx/density.hpp"
#include "partctx/pipeline.hpp"
#include "partctx/pose_context.hpp"
#include "partctx/synth.hpp"

namespace {

using namespace partctx;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// Contraction / maximum-principle / stationarity evidence gathered from
// every solver run in the suite.
struct SolverEvidence {
  std::size_t runs = 0;
  double worst_ratio_excess = -1.0;  // max over runs of (ratio - contraction)
  double worst_clamp = 0.0;
  bool iterates_inside = true;
  double worst_stationarity_over_tol = 0.0;  // max residual / tol
};

SolverEvidence g_solver;

IterationObserver contraction_probe(double contraction) {
  return [contraction](const IterationRecord& r) {
    g_solver.worst_ratio_excess = std::max(g_solver.worst_ratio_excess, r.ratio - contraction);
    g_solver.worst_clamp = std::max(g_solver.worst_clamp, r.clamped);
    if (r.min_value < 0.0 || r.max_value > 1.0) g_solver.iterates_inside = false;
  };
}

void record_stationarity(const StationarityResidual& s, double tol) {
  g_solver.worst_stationarity_over_tol =
      std::max(g_solver.worst_stationarity_over_tol, std::max(s.pixel, s.superpixel) / tol);
}

// Graph invariants of criterion 5, accumulated over every built graph.
struct GraphEvidence {
  std::size_t graphs = 0;
  Verdict v;
};
GraphEvidence g_graph;

void check_graph(const PartGraph& g, bool constant_image) {
  ++g_graph.graphs;
  if (!g.w_xx.is_symmetric()) g_graph.v.fail("W_xx not symmetric");
  if (!g.w_yy.is_symmetric()) g_graph.v.fail("W_yy not symmetric");
  for (const CsrMatrix* p : {&g.p_x, &g.p_y, &g.p_xy, &g.p_yx}) {
    for (int r = 0; r < p->rows(); ++r) {
      if (std::abs(p->row_sum(r) - 1.0) > 1e-9) g_graph.v.fail("P row sum off by > 1e-9");
    }
  }
  if (!constant_image) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const Triplet& t : g.w_xx.triplets()) {
      sum += -std::log(t.value);
      ++n;
    }
    if (std::abs(sum / double(n) - 0.5) > 1e-9) {
      g_graph.v.fail("mean d^c = " + std::to_string(sum / double(n)));
    }
  }
}

// Criterion 6 evidence.
struct GeodesicEvidence {
  std::size_t layers = 0;
  Verdict v;
};
GeodesicEvidence g_geo;

void check_geodesic(const SuperpixelLayer& layer, const std::vector<int>& seeds) {
  if (layer.size() > 200 || seeds.empty()) return;
  ++g_geo.layers;
  if (geodesic_distances(layer, seeds) != oracle::floyd_warshall(layer, seeds)) {
    g_geo.v.fail("Dijkstra differs from Floyd-Warshall on a " + std::to_string(layer.size()) +
                 "-superpixel layer");
  }
}

std::vector<double> solve_checked(const PartGraph& g, const SolverParams& p,
                                  const std::vector<double>& zt) {
  const JointSystem sys = build_system(g, p);
  const SolveResult r = solve_label(sys, zt, Exec::kParallel, contraction_probe(sys.contraction));
  ++g_solver.runs;
  g_solver.worst_clamp = std::max(g_solver.worst_clamp, r.report.max_clamp);
  const std::size_t nx = std::size_t(g.n_x);
  const std::vector<double> u(r.z.begin(), r.z.begin() + long(nx)), v(r.z.begin() + long(nx), r.z.end());
  const std::vector<double> ut(zt.begin(), zt.begin() + long(nx)), vt(zt.begin() + long(nx), zt.end());
  record_stationarity(stationarity_residual(g, p, u, v, ut, vt), p.tol);
  return r.z;
}

// ---- 1 ----------------------------------------------------------------------

Verdict criterion_solver_oracle() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lam(0.1, 10.0), pp(0.0, 2.0), unit(0.0, 1.0);
  std::uniform_int_distribution<int> total(20, 500);
  const auto start = Clock::now();
  const int kGraphs = 60;
  double worst = 0.0;
  for (int k = 0; k < kGraphs; ++k) {
    const int n = total(rng);
    const int n_y = std::max(1, int(n * (0.1 + 0.3 * unit(rng))));
    const int n_x = n - n_y;
    const PartGraph g = oracle::random_graph(rng, n_x, n_y, 1 + int(rng() % 3));
    SolverParams p;
    p.lambda_x = lam(rng);
    p.lambda_y = lam(rng);
    p.pi = pp(rng);
    p.psi = pp(rng);
    p.tol = 1e-12;
    std::vector<double> zt(static_cast<std::size_t>(n));
    for (double& x : zt) x = unit(rng);
    const auto z = solve_checked(g, p, zt);
    const auto ref = oracle::dense_direct_solve(g, p, zt);
    for (std::size_t i = 0; i < z.size(); ++i) worst = std::max(worst, std::abs(z[i] - ref[i]));
  }
  const double t = seconds_since(start);
  if (worst > 1e-8) v.fail("max |z - z_direct| = " + std::to_string(worst));
  if (t >= 30.0) v.fail("runtime " + std::to_string(t) + " s");
  std::ostringstream os;
  os << kGraphs << " graphs, max |z - z_direct|_inf = " << worst << ", " << t << " s";
  if (v.ok) v.detail = os.str();
  return v;
}

// ---- 4 (also feeds 2, 3, 5, 6) ----------------------------------------------

Verdict criterion_synthetic_gain() {
  Verdict v;
  const PipelineConfig config;
  double sum_base = 0.0, sum_ref = 0.0, slowest = 0.0;
  double min_gain = std::numeric_limits<double>::infinity();
  const int kScenes = 20;
  for (int seed = 0; seed < kScenes; ++seed) {
    const SyntheticScene s = synth(std::uint64_t(seed), 3, 128, 0.3);
    std::vector<double> u(s.noisy_likelihoods.data.begin(), s.noisy_likelihoods.data.end());
    const LabelMap base = argmax_labels(posterior(128, 128, 4, u));

    RefineOptions opts;
    double contraction = 0.0;
    opts.observer = [&contraction](int, const IterationRecord& r) { contraction_probe(contraction)(r); };
    const auto start = Clock::now();
    // Contraction factor is known only after the graph exists; run once to get
    // the superpixels, then reuse them (bit-identical) with the probe attached.
    const RefineOutput out = run_refine(config, s.image, s.noisy_likelihoods, s.skeleton);
    const double t = seconds_since(start);
    slowest = std::max(slowest, t);

    const PartGraph g = build_graph(s.image, out.superpixels);
    check_graph(g, false);
    contraction = build_system(g, config.solver).contraction;
    opts.superpixels = &out.superpixels;
    const RefineOutput probed = run_refine(config, s.image, s.noisy_likelihoods, s.skeleton, opts);
    if (probed.labels.data != out.labels.data) v.fail("probed rerun differs");
    g_solver.runs += std::size_t(probed.refined.n_labels);
    for (const auto& r : probed.refined.reports) {
      g_solver.worst_clamp = std::max(g_solver.worst_clamp, r.max_clamp);
      if (!r.converged) v.fail("solver did not converge on seed " + std::to_string(seed));
    }
    for (const auto& st : probed.stationarity) record_stationarity(st, config.solver.tol);

    for (const auto& seeds : rasterize_skeleton(s.skeleton, out.superpixels)) {
      for (std::size_t l = 0; l < out.superpixels.layers.size(); ++l) {
        std::vector<int> local;
        for (int gid : seeds.superpixels) {
          if (gid >= out.superpixels.offsets[l] && gid < out.superpixels.offsets[l + 1]) {
            local.push_back(gid - out.superpixels.offsets[l]);
          }
        }
        check_geodesic(out.superpixels.layers[l], local);
      }
    }

    const double mb = miou(base, s.gt, 4).mean_iou * 100.0;
    const double mr = miou(out.labels, s.gt, 4).mean_iou * 100.0;
    sum_base += mb;
    sum_ref += mr;
    min_gain = std::min(min_gain, mr - mb);
    if (t > 10.0) v.fail("seed " + std::to_string(seed) + " took " + std::to_string(t) + " s");
  }
  const double gain = (sum_ref - sum_base) / kScenes;
  if (gain < 5.0) v.fail("mean mIoU gain " + std::to_string(gain) + " points");
  if (min_gain < -1.0) v.fail("a seed dropped by " + std::to_string(-min_gain) + " points");
  std::ostringstream os;
  os << "mIoU " << sum_base / kScenes << " -> " << sum_ref / kScenes << " (gain " << gain
     << " points), smallest per-seed gain " << min_gain << ", slowest scene " << slowest << " s";
  if (v.ok) v.detail = os.str();
  return v;
}

// ---- 2 / 3 ------------------------------------------------------------------

Verdict criterion_contraction() {
  Verdict v;
  if (g_solver.worst_ratio_excess > 1e-9) {
    v.fail("ratio exceeds max(1-Gamma) by " + std::to_string(g_solver.worst_ratio_excess));
  }
  if (!g_solver.iterates_inside) v.fail("an iterate left [0,1]");
  if (g_solver.worst_clamp > 1e-12) v.fail("clamp correction " + std::to_string(g_solver.worst_clamp));
  std::ostringstream os;
  os << g_solver.runs << " solves, max(ratio - rho) = " << g_solver.worst_ratio_excess
     << ", max clamp correction = " << g_solver.worst_clamp;
  if (v.ok) v.detail = os.str();
  return v;
}

Verdict criterion_stationarity() {
  Verdict v;
  if (g_solver.worst_stationarity_over_tol > 10.0) {
    v.fail("block residual = " + std::to_string(g_solver.worst_stationarity_over_tol) + " x tol");
  }
  std::ostringstream os;
  os << g_solver.runs << " solves, worst block residual = " << g_solver.worst_stationarity_over_tol
     << " x tol";
  if (v.ok) v.detail = os.str();
  return v;
}

// ---- 5 / 6 / 7 --------------------------------------------------------------

Verdict criterion_slic(std::mt19937_64& rng) {
  Verdict v;
  std::uniform_int_distribution<int> side(12, 48), blobs(1, 7);
  std::uniform_real_distribution<double> comp(2.0, 40.0);
  const int kImages = 100;
  for (int i = 0; i < kImages && v.ok; ++i) {
    const int w = side(rng), h = side(rng);
    const ImageLab img = to_lab(oracle::random_rgb(rng, w, h, blobs(rng)));
    const int k = 1 + int(rng() % std::uint64_t(std::min(80, w * h / 4)));
    const Exec exec = i % 2 ? Exec::kSerial : Exec::kParallel;
    const SuperpixelLayer layer = slic_segment(img, k, comp(rng), 10, exec);
    const std::string why = oracle::check_layer_invariants(layer, img);
    if (!why.empty()) v.fail("image " + std::to_string(i) + ": " + why);

    // Extra graph and geodesic coverage on the same images.
    std::vector<SuperpixelLayer> layers;
    layers.push_back(layer);
    const MultiLayerSuperpixels sp = stack_layers(std::move(layers));
    bool constant = true;
    for (std::size_t p = 1; p < img.pixel_count(); ++p) {
      if (squared_distance(img.pixel(p), img.pixel(std::size_t(0))) != 0.0) constant = false;
    }
    check_graph(build_graph(img, sp, exec), constant);
    std::vector<int> seeds = {int(rng() % std::uint64_t(layer.size()))};
    if (layer.size() > 3) seeds.push_back(int(rng() % std::uint64_t(layer.size())));
    check_geodesic(layer, seeds);
  }
  if (v.ok) v.detail = std::to_string(kImages) + " random images: coverage, contiguity, 4-connectivity, histograms";
  return v;
}

Verdict criterion_graph() {
  Verdict v = g_graph.v;
  if (v.ok) v.detail = std::to_string(g_graph.graphs) + " graphs: exact symmetry, stochastic P blocks, mean d^c = 0.5";
  return v;
}

Verdict criterion_geodesic() {
  Verdict v = g_geo.v;
  if (g_geo.layers == 0) v.fail("no layers checked");
  if (v.ok) v.detail = std::to_string(g_geo.layers) + " layers with <= 200 superpixels match exactly";
  return v;
}

// ---- 8 ----------------------------------------------------------------------

Verdict criterion_closed_form() {
  Verdict v;
  auto near = [&](double got, double want, double tol, const char* what) {
    if (!(std::abs(got - want) <= tol)) v.fail(std::string(what) + " = " + std::to_string(got));
  };
  near(pose_likelihood(1.0, std::log(2.0)), 0.5, 1e-12, "pose_likelihood(1, ln 2)");
  near(chi2(std::vector<double>{0.5, 0.5, 0, 0}, std::vector<double>{0, 0, 0.25, 0.75}), 1.0, 1e-9,
       "chi2 of disjoint histograms");
  near(pose_pixel_weight(0.0), std::exp(-1.0), 1e-12, "w_xy at Pr = 0");

  auto all = [&](const FeatureMap& f, double want, const char* what) {
    for (double x : f.data) near(x, want, 1e-12, what);
  };
  all(semantic_attention(FeatureMap(2, 2, 3, 0.0), FeatureMap(2, 2, 3, 1.3)), 0.0, "semantic f=0");
  all(semantic_attention(FeatureMap(2, 2, 3, 1.0), FeatureMap(2, 2, 3, 40.0)), 1.0, "semantic saturation");
  all(semantic_attention(FeatureMap(2, 2, 3, 2.0), FeatureMap(2, 2, 3, -2.0)), 1.0, "semantic sigma(0)");
  all(contour_attention(FeatureMap(2, 2, 1, 0.0), FeatureMap(2, 2, 1, 5.0)), 0.0, "contour f=0");
  all(contour_attention(FeatureMap(2, 2, 1, 0.0), FeatureMap(2, 2, 1, 0.0)), 0.0, "contour zeros");
  all(contour_attention(FeatureMap(2, 2, 1, 4.0), FeatureMap(2, 2, 1, -4.0)), 2.0, "contour sigma(0)");
  FeatureMap sem(2, 2, 3);
  for (std::size_t i = 0; i < sem.data.size(); ++i) sem.data[i] = 0.5 * double(i);
  const FeatureMap same = attention_fusion(sem, FeatureMap(2, 2, 1, 0.0));
  for (std::size_t i = 0; i < sem.data.size(); ++i) near(same.data[i], sem.data[i], 1e-12, "fusion f_con=0");
  all(attention_fusion(FeatureMap(2, 2, 3, 0.0), FeatureMap(2, 2, 1, 2.5)), 2.5, "fusion broadcast");
  FeatureMap one(1, 1, 2);
  one.data = {1.0, 2.0};
  const FeatureMap sum = attention_fusion(one, FeatureMap(1, 1, 1, 3.0));
  near(sum.data[0], 4.0, 1e-12, "fusion (1,2)+3 [0]");
  near(sum.data[1], 5.0, 1e-12, "fusion (1,2)+3 [1]");
  if (v.ok) v.detail = "pose likelihood, chi2, w_xy and 11 attention examples";
  return v;
}

// ---- 9 ----------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict criterion_determinism() {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "partctx_acceptance_determinism";
  fs::remove_all(root);
  const PipelineConfig config;
  for (std::uint64_t seed : {11u, 12u}) {
    const SyntheticScene s = synth(seed, 3, 128, 0.3);
    for (const char* run : {"a", "b"}) {
      const RefineOutput out = run_refine(config, s.image, s.noisy_likelihoods, s.skeleton);
      write_refine_outputs(out, s.rgb, root / std::to_string(seed) / run);
    }
    for (const char* f : {"labels.png", "u_refined.pft", "v_refined.pft", "overlay.png"}) {
      const auto a = slurp(root / std::to_string(seed) / "a" / f);
      const auto b = slurp(root / std::to_string(seed) / "b" / f);
      if (a.empty() || a != b) v.fail(std::string(f) + " differs between runs");
    }
  }
  fs::remove_all(root);
  if (v.ok) v.detail = "2 scenes x 2 runs: label maps and PFT outputs byte-identical";
  return v;
}

}  // namespace

int main() {
  std::mt19937_64 rng(77);
  struct Row {
    int id;
    const char* name;
    Verdict v;
  };
  std::vector<Row> rows;
  auto run = [&](int id, const char* name, const std::function<Verdict()>& fn) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    rows.push_back({id, name, v});
  };

  // Order matters: later criteria aggregate evidence from earlier runs.
  run(1, "solver matches dense direct solve", criterion_solver_oracle);
  run(4, "synthetic refinement gain", criterion_synthetic_gain);
  run(7, "SLIC invariants", [&] { return criterion_slic(rng); });
  run(2, "contraction and maximum principle", criterion_contraction);
  run(3, "stationarity", criterion_stationarity);
  run(5, "graph invariants", criterion_graph);
  run(6, "geodesic Dijkstra equals Floyd-Warshall", criterion_geodesic);
  run(8, "closed-form spot checks", criterion_closed_form);
  run(9, "determinism", criterion_determinism);

  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
  bool all_ok = true;
  for (const Row& r : rows) {
    std::printf("%s criterion %d: %s (%s)\n", r.v.ok ? "PASS" : "FAIL", r.id, r.name,
                r.v.detail.c_str());
    all_ok = all_ok && r.v.ok;
  }
  return all_ok ? 0 : 1;
}
