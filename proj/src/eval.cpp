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

#include "colordrop/eval.hpp"

#include <algorithm>
#include <string>

#include "colordrop/errors.hpp"
#include "colordrop/losses.hpp"

namespace colordrop {

RetrievalResult evaluate(const std::vector<FeatureRecord>& queries,
                         const std::vector<FeatureRecord>& gallery,
                         const EvalOptions& opts) {
  if (opts.max_rank < 1) {
    throw InvalidArgument("max_rank must be >= 1");
  }
  const std::size_t dim = !queries.empty() ? queries[0].feature.size()
                          : !gallery.empty() ? gallery[0].feature.size()
                                             : 0;
  for (const auto& q : queries) {
    if (q.feature.size() != dim) {
      throw DimensionMismatch("query features have mixed dimensions");
    }
  }
  for (const auto& g : gallery) {
    if (g.feature.size() != dim) {
      throw DimensionMismatch("gallery feature dimension differs from query");
    }
  }

  const std::size_t ranks = std::min(opts.max_rank, gallery.size());
  std::vector<std::size_t> first_hit_at(ranks, 0);
  RetrievalResult result;

  struct Candidate {
    double dist;
    std::size_t index;  // gallery index, the tie-breaker
    bool positive;
  };

  for (const auto& q : queries) {
    std::vector<Candidate> candidates;
    candidates.reserve(gallery.size());
    for (std::size_t gi = 0; gi < gallery.size(); ++gi) {
      const auto& g = gallery[gi];
      if (g.distractor()) {
        continue;  // junk never enters the ranking
      }
      if (opts.camera_filter && g.identity == q.identity &&
          g.camera == q.camera) {
        continue;
      }
      candidates.push_back(Candidate{
          pairwise_distance(q.feature, g.feature), gi,
          g.identity == q.identity});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate& a, const Candidate& b) {
                if (a.dist != b.dist) {
                  return a.dist < b.dist;
                }
                return a.index < b.index;
              });
    std::size_t num_positives = 0;
    for (const auto& c : candidates) {
      num_positives += c.positive ? 1 : 0;
    }
    if (num_positives == 0) {
      continue;  // unanswerable query, excluded from averages
    }
    double ap = 0.0;
    std::size_t hits = 0;
    std::size_t first_hit = 0;
    for (std::size_t r = 0; r < candidates.size(); ++r) {
      if (!candidates[r].positive) {
        continue;
      }
      ++hits;
      ap += static_cast<double>(hits) / static_cast<double>(r + 1);
      if (hits == 1) {
        first_hit = r + 1;
      }
    }
    ap /= static_cast<double>(num_positives);
    result.per_query_ap.push_back(ap);
    if (first_hit <= ranks && ranks > 0) {
      ++first_hit_at[first_hit - 1];
    }
    ++result.valid_queries;
  }

  if (result.valid_queries == 0) {
    throw NoValidQueries("no query has a reachable positive match");
  }
  double ap_sum = 0.0;
  for (const double ap : result.per_query_ap) {
    ap_sum += ap;
  }
  result.map = ap_sum / static_cast<double>(result.valid_queries);
  result.cmc.resize(ranks, 0.0);
  std::size_t cumulative = 0;
  for (std::size_t k = 0; k < ranks; ++k) {
    cumulative += first_hit_at[k];
    result.cmc[k] =
        static_cast<double>(cumulative) /
        static_cast<double>(result.valid_queries);
  }
  return result;
}

}  // namespace colordrop
