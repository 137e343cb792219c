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

#ifndef COLORDROP_EVAL_HPP_
#define COLORDROP_EVAL_HPP_

#include <cstddef>
#include <vector>

#include "colordrop/features.hpp"

namespace colordrop {

struct EvalOptions {
  std::size_t max_rank = 50;
  /// Standard protocol: gallery entries sharing both identity and camera
  /// with the query are dropped from that query's ranking.
  bool camera_filter = true;
};

struct RetrievalResult {
  /// Average precision of each valid query, in query order.
  std::vector<double> per_query_ap;
  /// cmc[k-1] = fraction of valid queries with a true match in the top k.
  std::vector<double> cmc;
  double map = 0.0;
  std::size_t valid_queries = 0;
};

/// Ranks the gallery per query by ascending Euclidean distance (ties broken
/// by gallery index), drops junk (identity < 1) and camera-filtered entries,
/// and aggregates AP and CMC. Queries without any reachable positive are
/// skipped; if every query is skipped the result is NoValidQueries.
RetrievalResult evaluate(const std::vector<FeatureRecord>& queries,
                         const std::vector<FeatureRecord>& gallery,
                         const EvalOptions& opts = {});

}  // namespace colordrop

#endif  // COLORDROP_EVAL_HPP_
