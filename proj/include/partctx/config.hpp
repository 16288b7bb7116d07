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


#ifndef PARTCTX_CONFIG_HPP_
#define PARTCTX_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "partctx/solver.hpp"

namespace partctx {

struct PipelineConfig {
  std::vector<int> granularities = {400, 100};
  double compactness = 10.0;
  int slic_iters = 10;
  SolverParams solver;
  int histogram_bins = 16;    // fixed; other values are rejected
  int kde_max_samples = 256;  // fixed; other values are rejected
  std::uint64_t seed = 0;     // synthetic scene generation only
};

void validate(const PipelineConfig& config);

// Missing keys keep their defaults; unknown keys are a FormatError.
PipelineConfig parse_config(const std::string& json_text);
PipelineConfig read_config(const std::filesystem::path& path);
std::string to_json(const PipelineConfig& config);

}  // namespace partctx

#endif  // PARTCTX_CONFIG_HPP_
