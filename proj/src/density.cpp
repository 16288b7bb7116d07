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


#include "partctx/density.hpp"

#include <algorithm>
#include <cmath>

#include "partctx/error.hpp"

namespace partctx {
namespace {

double channel(const Lab& c, int k) { return k == 0 ? c.l : (k == 1 ? c.a : c.b); }

}  // namespace

ColorKde::ColorKde(std::vector<Lab> samples, std::array<double, 3> bandwidth)
    : samples_(std::move(samples)), bandwidth_(bandwidth) {
  for (int k = 0; k < 3; ++k) {
    if (!(bandwidth_[std::size_t(k)] > 0.0)) throw ParameterError("kde: bandwidth must be > 0");
    inv_two_h2_[std::size_t(k)] = 1.0 / (2.0 * bandwidth_[std::size_t(k)] * bandwidth_[std::size_t(k)]);
  }
  max_density_ = 0.0;
  for (const Lab& s : samples_) max_density_ = std::max(max_density_, density(s));
}

ColorKde ColorKde::fit(std::span<const Lab> colors) {
  if (colors.empty()) throw ParameterError("kde: empty superpixel");
  std::vector<Lab> samples;
  const std::size_t n = colors.size();
  if (n <= kKdeMaxSamples) {
    samples.assign(colors.begin(), colors.end());
  } else {
    samples.reserve(kKdeMaxSamples);
    for (std::size_t i = 0; i < kKdeMaxSamples; ++i) samples.push_back(colors[i * n / kKdeMaxSamples]);
  }

  // Silverman: h = 1.06 * sigma * m^(-1/5) per channel.
  const double m = double(samples.size());
  std::array<double, 3> bw{};
  for (int k = 0; k < 3; ++k) {
    double mean = 0.0;
    for (const Lab& s : samples) mean += channel(s, k);
    mean /= m;
    double var = 0.0;
    for (const Lab& s : samples) var += (channel(s, k) - mean) * (channel(s, k) - mean);
    const double sigma = samples.size() > 1 ? std::sqrt(var / (m - 1.0)) : 0.0;
    bw[std::size_t(k)] = std::max(kKdeMinBandwidth, 1.06 * sigma * std::pow(m, -0.2));
  }
  return ColorKde(std::move(samples), bw);
}

ColorKde ColorKde::with_bandwidth(std::span<const Lab> samples, std::array<double, 3> bandwidth) {
  if (samples.empty()) throw ParameterError("kde: empty sample set");
  return ColorKde(std::vector<Lab>(samples.begin(), samples.end()), bandwidth);
}

double ColorKde::density(const Lab& c) const {
  double sum = 0.0;
  for (const Lab& s : samples_) {
    const double dl = c.l - s.l, da = c.a - s.a, db = c.b - s.b;
    sum += std::exp(-(dl * dl * inv_two_h2_[0] + da * da * inv_two_h2_[1] + db * db * inv_two_h2_[2]));
  }
  return sum / double(samples_.size());
}

double ColorKde::likelihood(const Lab& c) const {
  if (!(max_density_ > 0.0)) return 0.0;
  return std::clamp(density(c) / max_density_, 0.0, 1.0);
}

ColorKde kde_fit(std::span<const Lab> colors) { return ColorKde::fit(colors); }

double kde_likelihood(const ColorKde& model, const Lab& color) { return model.likelihood(color); }

double chi2(std::span<const double> h, std::span<const double> g) {
  if (h.size() != g.size()) throw DimensionError("chi2: histogram length mismatch");
  constexpr double kEps = 1e-10;
  double sum = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double d = h[i] - g[i];
    sum += d * d / (h[i] + g[i] + kEps);
  }
  return 0.5 * sum;
}

}  // namespace partctx
