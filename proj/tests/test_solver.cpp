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
#include "partctx/solver.hpp"

namespace partctx {
namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(Solver, GammaHalfAndDecoupling) {
  std::mt19937_64 rng(1);
  const PartGraph g = oracle::random_graph(rng, 30, 10);
  SolverParams p;
  p.pi = p.psi = 0.0;
  const JointSystem sys = build_system(g, p);
  for (double v : sys.gamma) EXPECT_EQ(v, 0.5);
  for (const Triplet& t : sys.pi_block.triplets()) {
    EXPECT_EQ(t.row < 30, t.col < 30) << "cross-block entry with pi = psi = 0";
  }
  EXPECT_EQ(sys.contraction, 0.5);
}

TEST(Solver, PiBlockIsStochastic) {
  std::mt19937_64 rng(2);
  const PartGraph g = oracle::random_graph(rng, 50, 12);
  SolverParams p;
  p.pi = 1.7;
  p.psi = 0.3;
  const JointSystem sys = build_system(g, p);
  for (int r = 0; r < sys.size(); ++r) EXPECT_NEAR(sys.pi_block.row_sum(r), 1.0, 1e-9);
}

TEST(Solver, HugeLambdaReturnsInput) {
  std::mt19937_64 rng(3);
  const PartGraph g = oracle::random_graph(rng, 30, 10);
  SolverParams p;
  p.lambda_x = p.lambda_y = 1e12;
  const JointSystem sys = build_system(g, p);
  const auto zt = random_vector(rng, 40);
  const auto res = solve_label(sys, zt);
  EXPECT_TRUE(res.report.converged);
  EXPECT_LT(max_abs_diff(res.z, zt), 1e-6);
}

TEST(Solver, OnesAreFixed) {
  std::mt19937_64 rng(4);
  const PartGraph g = oracle::random_graph(rng, 30, 10);
  const JointSystem sys = build_system(g, SolverParams{});
  const auto res = solve_label(sys, std::vector<double>(40, 1.0));
  for (double v : res.z) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Solver, MatchesDenseOracle) {
  std::mt19937_64 rng(5);
  const PartGraph g = oracle::random_graph(rng, 30, 10);
  SolverParams p;
  p.tol = 1e-12;
  const JointSystem sys = build_system(g, p);
  const auto zt = random_vector(rng, 40);
  const auto res = solve_label(sys, zt);
  ASSERT_TRUE(res.report.converged);
  EXPECT_LT(max_abs_diff(res.z, oracle::dense_direct_solve(g, p, zt)), 1e-8);
}

TEST(Solver, ContractionAndMaximumPrinciple) {
  std::mt19937_64 rng(6);
  const PartGraph g = oracle::random_graph(rng, 120, 30);
  SolverParams p;
  p.lambda_x = 0.2;
  p.lambda_y = 3.0;
  p.pi = 1.5;
  p.psi = 0.1;
  const JointSystem sys = build_system(g, p);
  const auto zt = random_vector(rng, 150);
  double worst_ratio = 0.0;
  bool inside = true;
  const auto res = solve_label(sys, zt, Exec::kParallel, [&](const IterationRecord& r) {
    worst_ratio = std::max(worst_ratio, r.ratio);
    inside = inside && r.min_value >= 0.0 && r.max_value <= 1.0;
  });
  EXPECT_TRUE(res.report.converged);
  EXPECT_LE(worst_ratio, sys.contraction + 1e-9);
  EXPECT_TRUE(inside);
  EXPECT_LE(res.report.max_clamp, 1e-12);
}

TEST(Solver, SerialAndParallelAgree) {
  std::mt19937_64 rng(7);
  const PartGraph g = oracle::random_graph(rng, 200, 40);
  const JointSystem sys = build_system(g, SolverParams{});
  const auto zt = random_vector(rng, 240);
  EXPECT_EQ(solve_label(sys, zt, Exec::kSerial).z, solve_label(sys, zt, Exec::kParallel).z);
}

TEST(Solver, RejectsBadInput) {
  std::mt19937_64 rng(8);
  const PartGraph g = oracle::random_graph(rng, 10, 3);
  const JointSystem sys = build_system(g, SolverParams{});
  std::vector<double> zt(13, 0.5);
  zt[2] = 1.5;
  EXPECT_THROW(solve_label(sys, zt), ParameterError);
  EXPECT_THROW(solve_label(sys, std::vector<double>(12, 0.5)), DimensionError);
  SolverParams bad;
  bad.lambda_x = 0.0;
  EXPECT_THROW(validate(bad), ParameterError);
  bad = SolverParams{};
  bad.pi = -1.0;
  EXPECT_THROW(validate(bad), ParameterError);
}

TEST(Solver, DefaultIterationBoundReachesTolerance) {
  // (1 - g)^n <= tol must hold within the bound.
  for (double g : {0.01, 0.1, 0.4, 0.5, 0.9}) {
    const int n = default_max_iters(g, 1e-8);
    EXPECT_LE(std::pow(1.0 - g, n), 1e-8) << g;
    EXPECT_GE(n, 10 * int(std::ceil(1.0 / g)));
  }
}

struct Problem {
  PartGraph graph;
  LikelihoodStack u0;
  PoseContext v0;
};

Problem random_problem(std::mt19937_64& rng, int w, int h, int n_y, int n_labels) {
  Problem pr{oracle::random_graph(rng, w * h, n_y), LikelihoodStack(w, h, n_labels), {}};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (float& v : pr.u0.data) v = float(u(rng));
  pr.v0.n_superpixels = n_y;
  pr.v0.n_labels = n_labels;
  pr.v0.values.resize(std::size_t(n_y) * n_labels);
  for (double& v : pr.v0.values) v = u(rng);
  return pr;
}

TEST(Refine, StationarityWithinTolerance) {
  std::mt19937_64 rng(9);
  const Problem pr = random_problem(rng, 8, 6, 12, 3);
  SolverParams p;
  const RefinedLikelihoods out = refine(pr.graph, p, pr.u0, pr.v0);
  ASSERT_TRUE(out.converged());
  for (int l = 0; l < 3; ++l) {
    std::vector<double> u, v, ut, vt;
    for (int i = 0; i < out.n_x; ++i) {
      u.push_back(out.u_at(i, l));
      ut.push_back(pr.u0.at(std::size_t(i), l));
    }
    for (int m = 0; m < out.n_y; ++m) {
      v.push_back(out.v_at(m, l));
      vt.push_back(pr.v0.at(m, l));
    }
    const auto r = stationarity_residual(pr.graph, p, u, v, ut, vt);
    EXPECT_LE(r.pixel, 10 * p.tol);
    EXPECT_LE(r.superpixel, 10 * p.tol);
  }
}

TEST(Refine, LabelPermutationCommutes) {
  std::mt19937_64 rng(10);
  const Problem pr = random_problem(rng, 7, 5, 9, 3);
  const int perm[3] = {2, 0, 1};
  Problem q = pr;
  for (std::size_t i = 0; i < pr.u0.pixel_count(); ++i) {
    for (int l = 0; l < 3; ++l) q.u0.at(i, perm[l]) = pr.u0.at(i, l);
  }
  for (int m = 0; m < 9; ++m) {
    for (int l = 0; l < 3; ++l) q.v0.at(m, perm[l]) = pr.v0.at(m, l);
  }
  const auto a = refine(pr.graph, SolverParams{}, pr.u0, pr.v0);
  const auto b = refine(q.graph, SolverParams{}, q.u0, q.v0);
  for (int i = 0; i < a.n_x; ++i) {
    for (int l = 0; l < 3; ++l) EXPECT_EQ(a.u_at(i, l), b.u_at(i, perm[l]));
  }
}

TEST(Refine, UniformHalfIsFixed) {
  std::mt19937_64 rng(11);
  Problem pr = random_problem(rng, 6, 6, 8, 2);
  for (float& v : pr.u0.data) v = 0.5f;
  for (double& v : pr.v0.values) v = 0.5;
  const auto out = refine(pr.graph, SolverParams{}, pr.u0, pr.v0);
  for (double v : out.u) EXPECT_NEAR(v, 0.5, 1e-12);
  for (double v : out.v) EXPECT_NEAR(v, 0.5, 1e-12);
}

TEST(Refine, DecoupledFittingDominated) {
  std::mt19937_64 rng(12);
  const Problem pr = random_problem(rng, 6, 5, 7, 3);
  SolverParams p;
  p.pi = p.psi = 0.0;
  p.lambda_x = 1e12;
  const auto out = refine(pr.graph, p, pr.u0, pr.v0);
  for (int i = 0; i < out.n_x; ++i) {
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(out.u_at(i, l), pr.u0.at(std::size_t(i), l), 1e-6);
  }
}

TEST(Refine, DimensionChecks) {
  std::mt19937_64 rng(13);
  Problem pr = random_problem(rng, 4, 4, 5, 2);
  LikelihoodStack wrong(4, 3, 2);
  EXPECT_THROW(refine(pr.graph, SolverParams{}, wrong, pr.v0), DimensionError);
  pr.v0.n_labels = 3;
  pr.v0.values.resize(15, 0.0);
  EXPECT_THROW(refine(pr.graph, SolverParams{}, pr.u0, pr.v0), DimensionError);
}

}  // namespace
}  // namespace partctx
