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


#ifndef PARTCTX_PARALLEL_HPP_
#define PARTCTX_PARALLEL_HPP_

#ifdef _OPENMP
#include <omp.h>
#endif

namespace partctx {

// Selects between the OpenMP kernel and the serial reference kernel. Both
// variants perform the same floating-point operations in the same order per
// output element, so their results are bit-identical.
enum class Exec { kSerial, kParallel };

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace partctx

#endif  // PARTCTX_PARALLEL_HPP_
