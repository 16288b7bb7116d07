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


#ifndef PARTCTX_ERROR_HPP_
#define PARTCTX_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace partctx {

// Base class for every error raised by the library. The CLI maps all of
// these to the "input error" exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unsupported file contents (bad magic, truncated payload,
// unsupported PNG layout, schema violations in JSON).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Out-of-range numeric parameter.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Shapes of two inputs do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace partctx

#endif  // PARTCTX_ERROR_HPP_
