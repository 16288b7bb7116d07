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


#include "partctx/labeling.hpp"

#include <algorithm>

#include "json.hpp"
#include "partctx/error.hpp"

namespace partctx {

Posterior posterior(int width, int height, int n_labels, std::span<const double> u) {
  if (n_labels < 1) throw ParameterError("posterior: need at least one label");
  const std::size_t n = std::size_t(width) * height;
  if (u.size() != n * std::size_t(n_labels)) throw DimensionError("posterior: size mismatch");
  Posterior p{width, height, n_labels, std::vector<double>(u.size())};
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = u.subspan(i * n_labels, std::size_t(n_labels));
    double sum = 0.0;
    for (double v : row) {
      if (v < 0.0) throw ParameterError("posterior: negative likelihood");
      sum += v;
    }
    for (int l = 0; l < n_labels; ++l) {
      p.data[i * n_labels + l] = sum > 0.0 ? row[std::size_t(l)] / sum : 1.0 / n_labels;
    }
  }
  return p;
}

LabelMap argmax_labels(const Posterior& p) {
  if (p.n_labels > 256) throw ParameterError("argmax: label maps hold at most 256 classes");
  LabelMap out(p.width, p.height);
  for (std::size_t i = 0; i < out.pixel_count(); ++i) {
    int best = 0;
    for (int l = 1; l < p.n_labels; ++l) {
      if (p.at(i, l) > p.at(i, best)) best = l;
    }
    out.data[i] = std::uint8_t(best);
  }
  return out;
}

IouReport miou(const LabelMap& pred, const LabelMap& gt, int n_labels) {
  if (pred.width != gt.width || pred.height != gt.height) {
    throw DimensionError("miou: prediction and ground truth differ in size");
  }
  int n = n_labels;
  if (n <= 0) {
    int mx = 0;
    for (auto v : pred.data) mx = std::max(mx, int(v));
    for (auto v : gt.data) mx = std::max(mx, int(v));
    n = mx + 1;
  }
  IouReport r;
  r.confusion.assign(std::size_t(n), std::vector<std::uint64_t>(std::size_t(n), 0));
  for (std::size_t i = 0; i < gt.pixel_count(); ++i) {
    if (gt.data[i] >= n || pred.data[i] >= n) throw ParameterError("miou: label out of range");
    ++r.confusion[gt.data[i]][pred.data[i]];
  }
  r.per_class_iou.assign(std::size_t(n), 0.0);
  r.present.assign(std::size_t(n), false);
  double sum = 0.0;
  int count = 0;
  for (int c = 0; c < n; ++c) {
    std::uint64_t row = 0, col = 0;
    for (int k = 0; k < n; ++k) {
      row += r.confusion[std::size_t(c)][std::size_t(k)];
      col += r.confusion[std::size_t(k)][std::size_t(c)];
    }
    const std::uint64_t tp = r.confusion[std::size_t(c)][std::size_t(c)];
    const std::uint64_t uni = row + col - tp;
    if (uni == 0) continue;
    r.present[std::size_t(c)] = true;
    r.per_class_iou[std::size_t(c)] = double(tp) / double(uni);
    sum += r.per_class_iou[std::size_t(c)];
    ++count;
  }
  r.mean_iou = count > 0 ? sum / count : 0.0;
  return r;
}

std::string to_json(const IouReport& report) {
  nlohmann::json j;
  j["per_class"] = report.per_class_iou;
  j["mean"] = report.mean_iou;
  j["confusion"] = report.confusion;
  return j.dump();
}

double pixel_accuracy(const LabelMap& pred, const LabelMap& gt) {
  if (pred.data.size() != gt.data.size()) throw DimensionError("accuracy: size mismatch");
  if (gt.data.empty()) return 0.0;
  std::size_t hit = 0;
  for (std::size_t i = 0; i < gt.data.size(); ++i) hit += pred.data[i] == gt.data[i];
  return double(hit) / double(gt.data.size());
}

}  // namespace partctx
