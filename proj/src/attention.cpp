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


#include "partctx/attention.hpp"

#include <cmath>

#include "partctx/error.hpp"

namespace partctx {
namespace {

void check_finite(const FeatureMap& f) {
  for (double v : f.data) {
    if (!std::isfinite(v)) throw ParameterError("attention: non-finite feature value");
  }
}

void require_same_shape(const FeatureMap& a, const FeatureMap& b) {
  if (a.height != b.height || a.width != b.width || a.channels != b.channels) {
    throw DimensionError("attention: feature map shapes differ");
  }
  if (a.channels < 1) throw DimensionError("attention: feature map has no channels");
  check_finite(a);
  check_finite(b);
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

FeatureMap semantic_attention(const FeatureMap& f_cur, const FeatureMap& f_later) {
  require_same_shape(f_cur, f_later);
  FeatureMap out = f_cur;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = sigmoid(f_cur.data[i] + f_later.data[i]) * f_cur.data[i];
  }
  return out;
}

FeatureMap contour_attention(const FeatureMap& f_cur, const FeatureMap& f_earlier) {
  require_same_shape(f_cur, f_earlier);
  if (f_cur.channels != 1) throw DimensionError("contour attention: expects 1-channel maps");
  FeatureMap out = f_cur;
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    out.data[i] = sigmoid(0.5 * (f_cur.data[i] + f_earlier.data[i])) * f_cur.data[i];
  }
  return out;
}

FeatureMap attention_fusion(const FeatureMap& f_sem, const FeatureMap& f_con) {
  if (f_sem.height != f_con.height || f_sem.width != f_con.width) {
    throw DimensionError("attention fusion: spatial dimensions differ");
  }
  if (f_con.channels != 1) throw DimensionError("attention fusion: contour map must be 1-channel");
  if (f_sem.channels < 1) throw DimensionError("attention fusion: semantic map has no channels");
  check_finite(f_sem);
  check_finite(f_con);
  FeatureMap out = f_sem;
  for (int y = 0; y < f_sem.height; ++y) {
    for (int x = 0; x < f_sem.width; ++x) {
      const double c = f_con.at(y, x, 0);
      for (int k = 0; k < f_sem.channels; ++k) out.at(y, x, k) += c;
    }
  }
  return out;
}

FeatureMap to_feature_map(const Tensor& t) {
  if (t.dims.size() != 3) throw FormatError("feature map: expected rank 3 (height, width, channels)");
  FeatureMap f(int(t.dims[0]), int(t.dims[1]), int(t.dims[2]));
  for (std::size_t i = 0; i < t.data.size(); ++i) f.data[i] = double(t.data[i]);
  return f;
}

Tensor to_tensor(const FeatureMap& f) {
  Tensor t;
  t.dims = {std::uint32_t(f.height), std::uint32_t(f.width), std::uint32_t(f.channels)};
  t.data.reserve(f.data.size());
  for (double v : f.data) t.data.push_back(float(v));
  return t;
}

}  // namespace partctx
