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


#ifndef PARTCTX_SYNTH_HPP_
#define PARTCTX_SYNTH_HPP_

#include <cstdint>

#include "partctx/color.hpp"
#include "partctx/image_io.hpp"
#include "partctx/pft.hpp"
#include "partctx/skeleton.hpp"

namespace partctx {

// Stick figure of n_parts capsules (labels 1..n_parts) on a textured
// background. The image is generated in 8-bit RGB and converted to Lab the
// same way load_image does, so writing and re-reading the PNG reproduces
// `image` exactly.
struct SyntheticScene {
  RgbImage rgb;
  ImageLab image;
  LabelMap gt;
  Skeleton skeleton;
  LikelihoodStack noisy_likelihoods;
};

// Each pixel keeps the one-hot ground-truth vector with probability
// 1 - noise and is replaced by independent U[0,1] draws otherwise.
SyntheticScene synth(std::uint64_t seed, int n_parts, int size, double noise);

}  // namespace partctx

#endif  // PARTCTX_SYNTH_HPP_
