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


#ifndef PARTCTX_SOLVER_HPP_
#define PARTCTX_SOLVER_HPP_

#include <functional>
#include <span>
#include <vector>

#include "partctx/graph.hpp"
#include "partctx/parallel.hpp"
#include "partctx/pft.hpp"
#include "partctx/pose_context.hpp"
#include "partctx/sparse.hpp"

namespace partctx {

struct SolverParams {
  double lambda_x = 1.0;
  double lambda_y = 1.0;
  double pi = 0.5;
  double psi = 0.5;
  double beta = 0.05;  // consumed by build_pose_context
  double tol = 1e-8;
  int max_iters = 0;   // 0 selects default_max_iters()
};

void validate(const SolverParams& params);

// Coupled system (I - (I - Gamma) Pi) z = Gamma z~ over the stacked
// pixel/superpixel unknowns z = [U; V]. Shared by every label.
struct JointSystem {
  int n_x = 0;
  int n_y = 0;
  std::vector<double> gamma;      // diagonal of Gamma, pixel rows first
  CsrMatrix pi_block;             // Pi, row-stochastic
  CsrMatrix iteration;            // (I - Gamma) Pi
  double contraction = 0.0;       // max_i (1 - Gamma_ii) = ||(I - Gamma) Pi||_inf
  double tol = 1e-8;
  int max_iters = 0;

  int size() const { return n_x + n_y; }
};

// Iterations needed for the residual bound contraction^k <= tol, plus
// 10 * ceil(1 / min Gamma) of slack.
int default_max_iters(double min_gamma, double tol);

JointSystem build_system(const PartGraph& graph, const SolverParams& params);

struct IterationRecord {
  int iteration = 0;
  double step = 0.0;     // ||z_k - z_{k-1}||_inf, equal to the residual of z_{k-1}
  double ratio = 0.0;    // step / previous step (0 on the first iteration)
  double min_value = 0.0;
  double max_value = 0.0;
  double clamped = 0.0;  // largest correction applied to keep z in [0, 1]
};

using IterationObserver = std::function<void(const IterationRecord&)>;

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  double step = 0.0;       // last step norm
  double residual = 0.0;   // ||B z - Gamma z~||_inf of the returned z
  double max_ratio = 0.0;  // largest per-iteration contraction ratio observed
  double max_clamp = 0.0;
};

struct SolveResult {
  std::vector<double> z;
  SolveReport report;
};

// Fixed-point iteration z <- (I - Gamma) Pi z + Gamma z~ from z = z~, run in
// residual form: r_{k+1} = (I - Gamma) Pi r_k, z_{k+1} = z_k + r_k. Stops when
// the step falls to tol or max_iters is reached (report.converged = false).
SolveResult solve_label(const JointSystem& system, std::span<const double> z_tilde,
                        Exec exec = Exec::kParallel, const IterationObserver& observer = {});

// Refined pixel (U) and superpixel (V) likelihoods, row-major per node.
struct RefinedLikelihoods {
  int n_x = 0;
  int n_y = 0;
  int n_labels = 0;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<SolveReport> reports;  // one per label

  bool converged() const;
  double u_at(int i, int l) const { return u[std::size_t(i) * n_labels + l]; }
  double v_at(int m, int l) const { return v[std::size_t(m) * n_labels + l]; }
};

using LabelObserver = std::function<void(int label, const IterationRecord&)>;

// Solves every label column independently against one shared system.
// Non-converged labels are reported, not thrown.
RefinedLikelihoods refine(const PartGraph& graph, const SolverParams& params,
                          const LikelihoodStack& u0, const PoseContext& v0,
                          Exec exec = Exec::kParallel, const LabelObserver& observer = {});

struct StationarityResidual {
  double pixel = 0.0;
  double superpixel = 0.0;
};

// Infinity norms of the two first-order optimality conditions
//   (I - P_x) U + lambda_x (U - U~) + pi  (U - P_xy V) = 0
//   (I - P_y) V + lambda_y (V - V~) + psi (V - P_yx U) = 0
// evaluated directly from the graph blocks for one label.
StationarityResidual stationarity_residual(const PartGraph& graph, const SolverParams& params,
                                           std::span<const double> u, std::span<const double> v,
                                           std::span<const double> u_tilde,
                                           std::span<const double> v_tilde);

}  // namespace partctx

#endif  // PARTCTX_SOLVER_HPP_
