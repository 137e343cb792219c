// Copyright 2026 The Colordrop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COLORDROP_RNG_HPP_
#define COLORDROP_RNG_HPP_

#include <cstdint>

namespace colordrop {

/// Deterministic, splittable uniform random source.
///
/// The core generator is PCG32 (XSH-RR output on a 64-bit LCG). A stream id
/// selects the LCG increment, so RngStream(seed, a) and RngStream(seed, b)
/// yield unrelated sequences for a != b; per-item parallelism stays
/// reproducible by giving every item its own stream instead of sharing one.
/// Every draw consumes exactly one generator step.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  /// One raw generator step.
  std::uint32_t next_u32();

  /// Uniform real in [0, 1).
  double uniform01();

  /// Uniform real in [lo, hi). Throws InvalidRange if lo >= hi.
  double uniform(double lo, double hi);

  /// Uniform integer in [0, bound). Throws InvalidRange if bound == 0.
  std::uint32_t uniform_int(std::uint32_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace colordrop

#endif  // COLORDROP_RNG_HPP_
