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

#include "colordrop/sampler.hpp"

#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "colordrop/errors.hpp"

namespace colordrop {

Batch sample_batch(const Manifest& manifest, const BatchSpec& spec,
                   RngStream& rng) {
  if (spec.k < 2 || spec.m < 2) {
    throw InvalidArgument("batch spec needs k >= 2 and m >= 2");
  }
  // Identity-sorted grouping keeps the draw sequence independent of record
  // order within the manifest file.
  std::map<int, std::vector<const SampleRecord*>> groups;
  for (const auto& rec : manifest.records) {
    if (!rec.distractor()) {
      groups[rec.identity].push_back(&rec);
    }
  }
  if (groups.size() < spec.k) {
    throw InsufficientIdentities(
        "need " + std::to_string(spec.k) + " identities, manifest has " +
        std::to_string(groups.size()) + " usable ones");
  }
  std::vector<int> ids;
  ids.reserve(groups.size());
  for (const auto& [id, _] : groups) {
    ids.push_back(id);
  }
  // Partial Fisher-Yates: the first k entries are a uniform draw without
  // replacement.
  for (unsigned i = 0; i < spec.k; ++i) {
    const auto j =
        i + rng.uniform_int(static_cast<std::uint32_t>(ids.size() - i));
    std::swap(ids[i], ids[j]);
  }

  Batch batch;
  batch.entries.reserve(spec.batch_size());
  for (unsigned i = 0; i < spec.k; ++i) {
    const auto& recs = groups[ids[i]];
    std::vector<std::size_t> picks;
    if (recs.size() >= spec.m) {
      std::vector<std::size_t> order(recs.size());
      std::iota(order.begin(), order.end(), 0);
      for (unsigned t = 0; t < spec.m; ++t) {
        const auto j =
            t + rng.uniform_int(static_cast<std::uint32_t>(order.size() - t));
        std::swap(order[t], order[j]);
        picks.push_back(order[t]);
      }
    } else {
      // Too few images: keep every one, then fill with replacement.
      for (std::size_t t = 0; t < recs.size(); ++t) {
        picks.push_back(t);
      }
      while (picks.size() < spec.m) {
        picks.push_back(
            rng.uniform_int(static_cast<std::uint32_t>(recs.size())));
      }
    }
    for (const std::size_t pick : picks) {
      batch.entries.push_back(
          BatchEntry{*recs[pick], batch.entries.size()});
    }
  }
  return batch;
}

}  // namespace colordrop
