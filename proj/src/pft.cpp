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


#include "partctx/pft.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "partctx/error.hpp"

namespace partctx {
namespace {

constexpr char kMagic[4] = {'P', 'F', 'T', '1'};
constexpr std::uint32_t kMaxRank = 16;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

std::size_t checked_product(const std::vector<std::uint32_t>& dims) {
  std::size_t n = 1;
  for (std::uint32_t d : dims) {
    if (d == 0) throw FormatError("pft: zero dimension");
    if (n > std::numeric_limits<std::size_t>::max() / 4 / d) {
      throw FormatError("pft: dimension overflow");
    }
    n *= d;
  }
  return n;
}

}  // namespace

std::size_t Tensor::element_count() const {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

std::vector<std::uint8_t> encode_pft(const Tensor& t) {
  if (t.dims.empty() || t.dims.size() > kMaxRank) throw FormatError("pft: unsupported rank");
  const std::size_t n = checked_product(t.dims);
  if (n != t.data.size()) throw FormatError("pft: payload size does not match dims");
  std::vector<std::uint8_t> out;
  out.reserve(8 + 4 * t.dims.size() + 4 * n);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put_u32(out, static_cast<std::uint32_t>(t.dims.size()));
  for (auto d : t.dims) put_u32(out, d);
  for (float v : t.data) put_u32(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

Tensor decode_pft(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("pft: bad magic");
  }
  const std::uint32_t rank = get_u32(bytes.data() + 4);
  if (rank == 0 || rank > kMaxRank) throw FormatError("pft: unsupported rank");
  const std::size_t header = 8 + 4 * std::size_t(rank);
  if (bytes.size() < header) throw FormatError("pft: truncated header");
  Tensor t;
  t.dims.resize(rank);
  for (std::uint32_t i = 0; i < rank; ++i) t.dims[i] = get_u32(bytes.data() + 8 + 4 * i);
  const std::size_t n = checked_product(t.dims);
  if (bytes.size() - header < 4 * n) throw FormatError("pft: truncated payload");
  if (bytes.size() - header > 4 * n) throw FormatError("pft: trailing bytes after payload");
  t.data.resize(n);
  const std::uint8_t* p = bytes.data() + header;
  for (std::size_t i = 0; i < n; ++i) t.data[i] = std::bit_cast<float>(get_u32(p + 4 * i));
  return t;
}

Tensor read_pft(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_pft(bytes);
}

void write_pft(const Tensor& t, const std::filesystem::path& path) {
  const auto bytes = encode_pft(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

void validate(const LikelihoodStack& stack) {
  if (stack.width <= 0 || stack.height <= 0) throw FormatError("likelihoods: zero dimension");
  if (stack.n_labels < 2) throw FormatError("likelihoods: need at least 2 labels");
  if (stack.data.size() != stack.pixel_count() * stack.n_labels) {
    throw FormatError("likelihoods: data length does not match dims");
  }
  for (float v : stack.data) {
    if (!(v >= 0.0f && v <= 1.0f)) throw FormatError("likelihoods: value outside [0,1]");
  }
}

LikelihoodStack to_likelihood_stack(const Tensor& t) {
  if (t.dims.size() != 3) throw FormatError("likelihoods: expected rank 3 (height, width, labels)");
  if (t.dims[0] > std::uint32_t(std::numeric_limits<int>::max()) ||
      t.dims[1] > std::uint32_t(std::numeric_limits<int>::max()) ||
      t.dims[2] > std::uint32_t(std::numeric_limits<int>::max())) {
    throw FormatError("likelihoods: dimension overflow");
  }
  LikelihoodStack s;
  s.height = int(t.dims[0]);
  s.width = int(t.dims[1]);
  s.n_labels = int(t.dims[2]);
  s.data = t.data;
  validate(s);
  return s;
}

Tensor to_tensor(const LikelihoodStack& stack) {
  Tensor t;
  t.dims = {std::uint32_t(stack.height), std::uint32_t(stack.width),
            std::uint32_t(stack.n_labels)};
  t.data = stack.data;
  return t;
}

LikelihoodStack read_tensor(const std::filesystem::path& path) {
  return to_likelihood_stack(read_pft(path));
}

void write_tensor(const LikelihoodStack& stack, const std::filesystem::path& path) {
  validate(stack);
  write_pft(to_tensor(stack), path);
}

}  // namespace partctx
