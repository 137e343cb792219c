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

#include "colordrop/rng.hpp"

#include <cmath>

#include "colordrop/errors.hpp"

namespace colordrop {

namespace {
constexpr std::uint64_t kPcgMultiplier = 6364136223846793005ULL;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : state_(0), inc_((stream << 1u) | 1u), seed_(seed), stream_(stream) {
  next_u32();
  state_ += seed;
  next_u32();
}

std::uint32_t RngStream::next_u32() {
  const std::uint64_t old = state_;
  state_ = old * kPcgMultiplier + inc_;
  const auto xorshifted =
      static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
  const auto rot = static_cast<std::uint32_t>(old >> 59u);
  return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
}

double RngStream::uniform01() {
  return static_cast<double>(next_u32()) * 0x1p-32;
}

double RngStream::uniform(double lo, double hi) {
  if (!(lo < hi)) {
    throw InvalidRange("uniform: lo must be < hi");
  }
  double v = lo + uniform01() * (hi - lo);
  if (v >= hi) {
    v = std::nextafter(hi, lo);
  }
  return v;
}

std::uint32_t RngStream::uniform_int(std::uint32_t bound) {
  if (bound == 0) {
    throw InvalidRange("uniform_int: bound must be positive");
  }
  // Fixed-point multiply maps one 32-bit step onto [0, bound).
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(next_u32()) * bound) >> 32u);
}

}  // namespace colordrop
