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


#include "partctx/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "partctx/density.hpp"
#include "partctx/error.hpp"
#include "partctx/superpixels.hpp"

namespace partctx {

using nlohmann::json;

void validate(const PipelineConfig& c) {
  if (c.granularities.empty()) throw ParameterError("config: granularities must be non-empty");
  for (std::size_t i = 0; i < c.granularities.size(); ++i) {
    if (c.granularities[i] < 1) throw ParameterError("config: granularities must be >= 1");
    if (i > 0 && c.granularities[i] >= c.granularities[i - 1]) {
      throw ParameterError("config: granularities must be strictly decreasing");
    }
  }
  if (!(c.compactness > 0.0)) throw ParameterError("config: compactness must be > 0");
  if (c.slic_iters < 0) throw ParameterError("config: slic_iters must be >= 0");
  if (c.histogram_bins != kHistogramBinsPerChannel) {
    throw ParameterError("config: histogram_bins is fixed at 16");
  }
  if (c.kde_max_samples != int(kKdeMaxSamples)) {
    throw ParameterError("config: kde_max_samples is fixed at 256");
  }
  validate(c.solver);
}

PipelineConfig parse_config(const std::string& json_text) {
  static const std::set<std::string> kKeys = {
      "granularities", "compactness", "slic_iters", "beta",           "lambda_x",
      "lambda_y",      "pi",          "psi",        "tol",            "max_iters",
      "histogram_bins", "kde_max_samples", "seed"};
  PipelineConfig c;
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object()) throw FormatError("config: top level must be an object");
    for (const auto& [key, _] : doc.items()) {
      if (!kKeys.contains(key)) throw FormatError("config: unknown key \"" + key + "\"");
    }
    auto get = [&](const char* key, auto& dst) {
      if (doc.contains(key)) doc.at(key).get_to(dst);
    };
    get("granularities", c.granularities);
    get("compactness", c.compactness);
    get("slic_iters", c.slic_iters);
    get("beta", c.solver.beta);
    get("lambda_x", c.solver.lambda_x);
    get("lambda_y", c.solver.lambda_y);
    get("pi", c.solver.pi);
    get("psi", c.solver.psi);
    get("tol", c.solver.tol);
    get("max_iters", c.solver.max_iters);
    get("histogram_bins", c.histogram_bins);
    get("kde_max_samples", c.kde_max_samples);
    get("seed", c.seed);
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  validate(c);
  return c;
}

PipelineConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_json(const PipelineConfig& c) {
  json j;
  j["granularities"] = c.granularities;
  j["compactness"] = c.compactness;
  j["slic_iters"] = c.slic_iters;
  j["beta"] = c.solver.beta;
  j["lambda_x"] = c.solver.lambda_x;
  j["lambda_y"] = c.solver.lambda_y;
  j["pi"] = c.solver.pi;
  j["psi"] = c.solver.psi;
  j["tol"] = c.solver.tol;
  j["max_iters"] = c.solver.max_iters;
  j["histogram_bins"] = c.histogram_bins;
  j["kde_max_samples"] = c.kde_max_samples;
  j["seed"] = c.seed;
  return j.dump(2);
}

}  // namespace partctx
