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


#ifndef PARTCTX_PFT_HPP_
#define PARTCTX_PFT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace partctx {

// Dense float tensor as stored in a PFT file:
//   "PFT1" | u32 rank | rank x u32 dims | prod(dims) x f32
// All integers and floats little-endian, payload row-major with the last
// dimension fastest.
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> data;

  std::size_t element_count() const;
};

std::vector<std::uint8_t> encode_pft(const Tensor& t);
// Throws FormatError on bad magic, zero or overflowing dimensions, and
// truncated or oversized payloads.
Tensor decode_pft(std::span<const std::uint8_t> bytes);

Tensor read_pft(const std::filesystem::path& path);
void write_pft(const Tensor& t, const std::filesystem::path& path);

// H x W x N per-pixel class likelihoods, values in [0, 1].
struct LikelihoodStack {
  int width = 0;
  int height = 0;
  int n_labels = 0;
  std::vector<float> data;

  LikelihoodStack() = default;
  LikelihoodStack(int w, int h, int n)
      : width(w), height(h), n_labels(n), data(std::size_t(w) * h * n, 0.0f) {}

  std::size_t pixel_count() const { return std::size_t(width) * height; }
  float at(std::size_t pixel, int label) const { return data[pixel * n_labels + label]; }
  float& at(std::size_t pixel, int label) { return data[pixel * n_labels + label]; }
};

// Validates shape and value invariants; throws FormatError.
void validate(const LikelihoodStack& stack);

LikelihoodStack to_likelihood_stack(const Tensor& t);
Tensor to_tensor(const LikelihoodStack& stack);

LikelihoodStack read_tensor(const std::filesystem::path& path);
void write_tensor(const LikelihoodStack& stack, const std::filesystem::path& path);

}  // namespace partctx

#endif  // PARTCTX_PFT_HPP_
