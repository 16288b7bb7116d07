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


#ifndef PARTCTX_LABELING_HPP_
#define PARTCTX_LABELING_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "partctx/image_io.hpp"

namespace partctx {

// Per-pixel class posteriors under a uniform prior, row-major.
struct Posterior {
  int width = 0;
  int height = 0;
  int n_labels = 0;
  std::vector<double> data;

  double at(std::size_t pixel, int label) const { return data[pixel * n_labels + label]; }
};

// p(l | x_i) = u_il / sum_l' u_il'. Rows summing to zero become uniform.
// Throws ParameterError on negative input.
Posterior posterior(int width, int height, int n_labels, std::span<const double> u);

// Maximum a posteriori label; ties go to the smallest index.
LabelMap argmax_labels(const Posterior& p);

struct IouReport {
  std::vector<double> per_class_iou;            // 0 for classes absent from both maps
  std::vector<bool> present;                    // class occurs in gt or prediction
  double mean_iou = 0.0;                        // over present classes
  std::vector<std::vector<std::uint64_t>> confusion;  // [gt][pred]
};

// n_labels <= 0 infers the class count from the maps.
IouReport miou(const LabelMap& pred, const LabelMap& gt, int n_labels = 0);

// {"per_class": [...], "mean": x, "confusion": [[...]]}
std::string to_json(const IouReport& report);

double pixel_accuracy(const LabelMap& pred, const LabelMap& gt);

}  // namespace partctx

#endif  // PARTCTX_LABELING_HPP_
