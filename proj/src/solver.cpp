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


#include "partctx/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "partctx/error.hpp"

namespace partctx {

void validate(const SolverParams& p) {
  if (!(p.lambda_x > 0.0) || !(p.lambda_y > 0.0)) {
    throw ParameterError("solver: lambda_x and lambda_y must be > 0");
  }
  if (!(p.pi >= 0.0) || !(p.psi >= 0.0)) throw ParameterError("solver: pi and psi must be >= 0");
  if (!(p.beta >= 0.0)) throw ParameterError("solver: beta must be >= 0");
  if (!(p.tol > 0.0)) throw ParameterError("solver: tol must be > 0");
  if (p.max_iters < 0) throw ParameterError("solver: max_iters must be >= 0");
}

int default_max_iters(double min_gamma, double tol) {
  const double rho = 1.0 - min_gamma;
  double needed = 1.0;
  if (rho > 0.0) needed = std::ceil(std::log(tol) / std::log(rho));
  const double slack = 10.0 * std::ceil(1.0 / min_gamma);
  const double total = std::max(1.0, needed) + slack;
  return total > 1e9 ? 1000000000 : int(total);
}

JointSystem build_system(const PartGraph& graph, const SolverParams& params) {
  validate(params);
  JointSystem sys;
  sys.n_x = graph.n_x;
  sys.n_y = graph.n_y;
  sys.tol = params.tol;
  const int n = sys.size();

  const double px = 1.0 + params.pi;
  const double py = 1.0 + params.psi;
  const double gamma_x = params.lambda_x / (px + params.lambda_x);
  const double gamma_y = params.lambda_y / (py + params.lambda_y);
  // 1 - Gamma computed directly rather than by subtraction.
  const double keep_x = px / (px + params.lambda_x);
  const double keep_y = py / (py + params.lambda_y);
  sys.gamma.assign(std::size_t(sys.n_x), gamma_x);
  sys.gamma.resize(std::size_t(n), gamma_y);
  sys.contraction = sys.n_y > 0 ? std::max(keep_x, keep_y) : keep_x;

  std::vector<Triplet> pi_t;
  pi_t.reserve(graph.p_x.nnz() + graph.p_y.nnz() + graph.p_xy.nnz() + graph.p_yx.nnz());
  auto add_block = [&](const CsrMatrix& block, int row0, int col0, double scale) {
    if (scale == 0.0) return;
    for (int r = 0; r < block.rows(); ++r) {
      const auto cols = block.row_cols(r);
      const auto vals = block.row_values(r);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        pi_t.push_back({row0 + r, col0 + cols[k], vals[k] * scale});
      }
    }
  };
  add_block(graph.p_x, 0, 0, 1.0 / px);
  add_block(graph.p_xy, 0, sys.n_x, params.pi / px);
  add_block(graph.p_yx, sys.n_x, 0, params.psi / py);
  add_block(graph.p_y, sys.n_x, sys.n_x, 1.0 / py);
  sys.pi_block = CsrMatrix::from_triplets(n, n, std::move(pi_t));

  std::vector<Triplet> it = sys.pi_block.triplets();
  for (auto& t : it) t.value *= t.row < sys.n_x ? keep_x : keep_y;
  sys.iteration = CsrMatrix::from_triplets(n, n, std::move(it));

  const double min_gamma = sys.n_y > 0 ? std::min(gamma_x, gamma_y) : gamma_x;
  sys.max_iters = params.max_iters > 0 ? params.max_iters : default_max_iters(min_gamma, params.tol);
  return sys;
}

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void multiply(const CsrMatrix& a, std::span<const double> x, std::span<double> y, Exec exec) {
  if (exec == Exec::kParallel) {
    kernels::spmv_parallel(a, x, y);
  } else {
    kernels::spmv_serial(a, x, y);
  }
}

}  // namespace

SolveResult solve_label(const JointSystem& system, std::span<const double> z_tilde, Exec exec,
                        const IterationObserver& observer) {
  const int n = system.size();
  if (int(z_tilde.size()) != n) throw DimensionError("solver: z~ has the wrong length");
  for (double v : z_tilde) {
    if (!(v >= 0.0 && v <= 1.0)) throw ParameterError("solver: z~ entries must lie in [0,1]");
  }

  SolveResult out;
  std::vector<double>& z = out.z;
  z.assign(z_tilde.begin(), z_tilde.end());
  const std::size_t len = std::size_t(n);
  std::vector<double> fit(len);
  for (int i = 0; i < n; ++i) fit[std::size_t(i)] = system.gamma[std::size_t(i)] * z_tilde[std::size_t(i)];

  std::vector<double> r(len);
  std::vector<double> tmp(len);
  multiply(system.iteration, z, tmp, exec);
  for (int i = 0; i < n; ++i) {
    r[std::size_t(i)] = (tmp[std::size_t(i)] + fit[std::size_t(i)]) - z[std::size_t(i)];
  }

  SolveReport& rep = out.report;
  double prev_step = 0.0;
  for (int k = 1; k <= system.max_iters; ++k) {
    double clamped = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
      const double raw = z[std::size_t(i)] + r[std::size_t(i)];
      const double c = std::clamp(raw, 0.0, 1.0);
      clamped = std::max(clamped, std::abs(raw - c));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      z[std::size_t(i)] = c;
    }
    const double step = inf_norm(r);
    const double ratio = prev_step > 0.0 ? step / prev_step : 0.0;
    rep.iterations = k;
    rep.step = step;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.max_clamp = std::max(rep.max_clamp, clamped);
    if (observer) observer({k, step, ratio, lo, hi, clamped});
    if (step <= system.tol) {
      rep.converged = true;
      break;
    }
    multiply(system.iteration, r, tmp, exec);
    r.swap(tmp);
    prev_step = step;
  }
  if (system.max_iters == 0) rep.converged = inf_norm(r) <= system.tol;

  multiply(system.iteration, z, tmp, exec);
  double res = 0.0;
  for (int i = 0; i < n; ++i) {
    res = std::max(res, std::abs(z[std::size_t(i)] - tmp[std::size_t(i)] - fit[std::size_t(i)]));
  }
  rep.residual = res;
  return out;
}

bool RefinedLikelihoods::converged() const {
  return std::all_of(reports.begin(), reports.end(), [](const SolveReport& r) { return r.converged; });
}

RefinedLikelihoods refine(const PartGraph& graph, const SolverParams& params,
                          const LikelihoodStack& u0, const PoseContext& v0, Exec exec,
                          const LabelObserver& observer) {
  if (int(u0.pixel_count()) != graph.n_x) {
    throw DimensionError("refine: likelihood stack has " + std::to_string(u0.pixel_count()) +
                         " pixels, graph has " + std::to_string(graph.n_x));
  }
  if (v0.n_superpixels != graph.n_y) throw DimensionError("refine: pose context superpixel count");
  if (v0.n_labels != u0.n_labels) throw DimensionError("refine: label counts differ");

  const JointSystem sys = build_system(graph, params);
  RefinedLikelihoods out;
  out.n_x = graph.n_x;
  out.n_y = graph.n_y;
  out.n_labels = u0.n_labels;
  out.u.assign(std::size_t(out.n_x) * out.n_labels, 0.0);
  out.v.assign(std::size_t(out.n_y) * out.n_labels, 0.0);

  std::vector<double> zt(std::size_t(sys.size()));
  for (int l = 0; l < out.n_labels; ++l) {
    for (int i = 0; i < out.n_x; ++i) zt[std::size_t(i)] = double(u0.at(std::size_t(i), l));
    for (int m = 0; m < out.n_y; ++m) zt[std::size_t(out.n_x + m)] = v0.at(m, l);
    IterationObserver obs;
    if (observer) obs = [&](const IterationRecord& rec) { observer(l, rec); };
    SolveResult res = solve_label(sys, zt, exec, obs);
    for (int i = 0; i < out.n_x; ++i) out.u[std::size_t(i) * out.n_labels + l] = res.z[std::size_t(i)];
    for (int m = 0; m < out.n_y; ++m) {
      out.v[std::size_t(m) * out.n_labels + l] = res.z[std::size_t(out.n_x + m)];
    }
    out.reports.push_back(res.report);
  }
  return out;
}

StationarityResidual stationarity_residual(const PartGraph& graph, const SolverParams& params,
                                           std::span<const double> u, std::span<const double> v,
                                           std::span<const double> u_tilde,
                                           std::span<const double> v_tilde) {
  const std::size_t nx = std::size_t(graph.n_x), ny = std::size_t(graph.n_y);
  if (u.size() != nx || u_tilde.size() != nx || v.size() != ny || v_tilde.size() != ny) {
    throw DimensionError("stationarity: vector lengths do not match the graph");
  }
  std::vector<double> pxu(nx), pxyv(nx), pyv(ny), pyxu(ny);
  kernels::spmv_serial(graph.p_x, u, pxu);
  kernels::spmv_serial(graph.p_xy, v, pxyv);
  kernels::spmv_serial(graph.p_y, v, pyv);
  kernels::spmv_serial(graph.p_yx, u, pyxu);

  StationarityResidual out;
  for (std::size_t i = 0; i < nx; ++i) {
    const double g = (u[i] - pxu[i]) + params.lambda_x * (u[i] - u_tilde[i]) +
                     params.pi * (u[i] - pxyv[i]);
    out.pixel = std::max(out.pixel, std::abs(g));
  }
  for (std::size_t m = 0; m < ny; ++m) {
    const double g = (v[m] - pyv[m]) + params.lambda_y * (v[m] - v_tilde[m]) +
                     params.psi * (v[m] - pyxu[m]);
    out.superpixel = std::max(out.superpixel, std::abs(g));
  }
  return out;
}

}  // namespace partctx
