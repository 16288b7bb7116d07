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


#include "partctx/skeleton.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "partctx/error.hpp"

namespace partctx {

using nlohmann::json;

void validate(const Skeleton& skeleton, std::optional<ImageSize> bounds, int n_labels) {
  for (const auto& part : skeleton.parts) {
    if (part.label == 0) throw FormatError("skeleton: background label has no skeleton");
    if (part.label < 0) throw FormatError("skeleton: negative label");
    if (n_labels > 0 && part.label >= n_labels) {
      throw FormatError("skeleton: label " + std::to_string(part.label) +
                        " exceeds the number of likelihood channels");
    }
    if (part.points.size() < 2) throw FormatError("skeleton: polyline needs at least 2 points");
    for (const auto& p : part.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw FormatError("skeleton: non-finite coordinate");
      }
      if (bounds && (p.x < 0.0 || p.y < 0.0 || p.x >= bounds->width || p.y >= bounds->height)) {
        throw FormatError("skeleton: point out of image bounds");
      }
    }
  }
}

Skeleton parse_skeleton(const std::string& json_text) {
  Skeleton out;
  try {
    const json doc = json::parse(json_text);
    if (!doc.is_object() || !doc.contains("parts") || !doc["parts"].is_array()) {
      throw FormatError("skeleton: missing \"parts\" array");
    }
    if (doc.contains("image")) {
      const auto& im = doc["image"];
      out.image = ImageSize{im.at("width").get<int>(), im.at("height").get<int>()};
      if (out.image->width <= 0 || out.image->height <= 0) {
        throw FormatError("skeleton: non-positive image size");
      }
    }
    for (const auto& jp : doc["parts"]) {
      PartLine line;
      line.label = jp.at("label").get<int>();
      for (const auto& pt : jp.at("points")) {
        if (!pt.is_array() || pt.size() != 2) throw FormatError("skeleton: point must be [x, y]");
        line.points.push_back({pt[0].get<double>(), pt[1].get<double>()});
      }
      out.parts.push_back(std::move(line));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("skeleton: ") + e.what());
  }
  validate(out, out.image);
  return out;
}

std::string serialize_skeleton(const Skeleton& skeleton) {
  json doc;
  if (skeleton.image) {
    doc["image"] = {{"width", skeleton.image->width}, {"height", skeleton.image->height}};
  }
  doc["parts"] = json::array();
  for (const auto& part : skeleton.parts) {
    json pts = json::array();
    for (const auto& p : part.points) pts.push_back({p.x, p.y});
    doc["parts"].push_back({{"label", part.label}, {"points", pts}});
  }
  return doc.dump(2);
}

Skeleton read_skeleton(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_skeleton(ss.str());
}

void write_skeleton(const Skeleton& skeleton, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize_skeleton(skeleton) << "\n";
}

}  // namespace partctx
