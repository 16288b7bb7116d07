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


#ifndef PARTCTX_SKELETON_HPP_
#define PARTCTX_SKELETON_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace partctx {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// One skeleton polyline for a body-part class. Several lines may share a
// label (one per person).
struct PartLine {
  int label = 1;
  std::vector<Point2> points;
};

struct ImageSize {
  int width = 0;
  int height = 0;
};

struct Skeleton {
  std::optional<ImageSize> image;
  std::vector<PartLine> parts;
};

// Checks labels (>= 1, and < n_labels when n_labels > 0), polyline length,
// and that every point lies in [0, width) x [0, height). Throws FormatError.
void validate(const Skeleton& skeleton, std::optional<ImageSize> bounds, int n_labels = 0);

Skeleton parse_skeleton(const std::string& json_text);
std::string serialize_skeleton(const Skeleton& skeleton);

// Parses and validates against the embedded "image" block when present.
Skeleton read_skeleton(const std::filesystem::path& path);
void write_skeleton(const Skeleton& skeleton, const std::filesystem::path& path);

}  // namespace partctx

#endif  // PARTCTX_SKELETON_HPP_
