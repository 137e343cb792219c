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

#ifndef COLORDROP_SAMPLER_HPP_
#define COLORDROP_SAMPLER_HPP_

#include <cstdint>
#include <vector>

#include "colordrop/manifest.hpp"
#include "colordrop/rng.hpp"

namespace colordrop {

/// Identity-balanced batch shape: k identities x m images each.
struct BatchSpec {
  unsigned k = 4;
  unsigned m = 4;
  std::uint64_t seed = 0;

  unsigned batch_size() const { return k * m; }
};

struct BatchEntry {
  SampleRecord record;
  std::size_t slot = 0;  // position in [0, k*m)
};

struct Batch {
  std::vector<BatchEntry> entries;
};

/// Draws k distinct non-distractor identities without replacement, then m
/// images per identity (with replacement only when an identity has fewer
/// than m images). Entries are grouped by identity in selection order.
/// Throws InsufficientIdentities when fewer than k identities exist.
Batch sample_batch(const Manifest& manifest, const BatchSpec& spec,
                   RngStream& rng);

}  // namespace colordrop

#endif  // COLORDROP_SAMPLER_HPP_
