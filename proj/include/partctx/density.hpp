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


#ifndef PARTCTX_DENSITY_HPP_
#define PARTCTX_DENSITY_HPP_

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "partctx/color.hpp"

namespace partctx {

inline constexpr std::size_t kKdeMaxSamples = 256;
inline constexpr double kKdeMinBandwidth = 1.0;

// Gaussian product-kernel density over a superpixel's Lab colors. Densities
// are reported relative to the best-covered stored sample, so the result of
// likelihood() is a bounded membership score in [0, 1].
class ColorKde {
 public:
  // Subsamples to at most kKdeMaxSamples with a fixed stride and picks the
  // per-channel bandwidth by Silverman's rule (floored at 1 Lab unit).
  static ColorKde fit(std::span<const Lab> colors);
  // Uses all given samples with a fixed bandwidth on every channel.
  static ColorKde with_bandwidth(std::span<const Lab> samples, std::array<double, 3> bandwidth);

  // Unnormalised kernel sum, averaged over samples.
  double density(const Lab& c) const;
  double likelihood(const Lab& c) const;

  const std::vector<Lab>& samples() const { return samples_; }
  const std::array<double, 3>& bandwidth() const { return bandwidth_; }
  double max_density() const { return max_density_; }

 private:
  ColorKde(std::vector<Lab> samples, std::array<double, 3> bandwidth);

  std::vector<Lab> samples_;
  std::array<double, 3> bandwidth_{};
  std::array<double, 3> inv_two_h2_{};
  double max_density_ = 1.0;
};

// Shorthand for ColorKde::fit and ColorKde::likelihood.
ColorKde kde_fit(std::span<const Lab> colors);
double kde_likelihood(const ColorKde& model, const Lab& color);

// Symmetric chi-squared distance 1/2 sum (h-g)^2 / (h+g+1e-10). In [0,1] for
// L1-normalised inputs.
double chi2(std::span<const double> h, std::span<const double> g);

}  // namespace partctx

#endif  // PARTCTX_DENSITY_HPP_
