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


#ifndef PARTCTX_ATTENTION_HPP_
#define PARTCTX_ATTENTION_HPP_

#include <cstddef>
#include <vector>

#include "partctx/pft.hpp"

namespace partctx {

// H x W x C feature map, channel-fastest like the PFT layout.
struct FeatureMap {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<double> data;

  FeatureMap() = default;
  FeatureMap(int h, int w, int c, double fill = 0.0)
      : height(h), width(w), channels(c), data(std::size_t(h) * w * c, fill) {}

  double& at(int y, int x, int c) { return data[(std::size_t(y) * width + x) * channels + c]; }
  double at(int y, int x, int c) const {
    return data[(std::size_t(y) * width + x) * channels + c];
  }
};

double sigmoid(double x);

// sigma(f_cur + f_later) * f_cur, elementwise over N channels.
FeatureMap semantic_attention(const FeatureMap& f_cur, const FeatureMap& f_later);

// sigma(mean(f_cur, f_earlier)) * f_cur on single-channel maps. The
// per-position mean stands in for the learned 2 -> 1 channel reduction.
FeatureMap contour_attention(const FeatureMap& f_cur, const FeatureMap& f_earlier);

// out[c] = f_sem[c] + f_con[0]; the contour channel is broadcast.
FeatureMap attention_fusion(const FeatureMap& f_sem, const FeatureMap& f_con);

FeatureMap to_feature_map(const Tensor& t);
Tensor to_tensor(const FeatureMap& f);

}  // namespace partctx

#endif  // PARTCTX_ATTENTION_HPP_
