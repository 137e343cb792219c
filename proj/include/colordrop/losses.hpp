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

#ifndef COLORDROP_LOSSES_HPP_
#define COLORDROP_LOSSES_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "colordrop/features.hpp"

namespace colordrop {

inline constexpr double kDefaultMargin = 0.3;

/// Euclidean distance. Throws DimensionMismatch on unequal lengths.
double pairwise_distance(std::span<const double> a, std::span<const double> b);

/// A mined (anchor, hardest positive, hardest negative) triple with the two
/// distances that chose it.
struct TripletSelection {
  std::size_t anchor = 0;
  std::size_t positive = 0;
  std::size_t negative = 0;
  double d_pos = 0.0;
  double d_neg = 0.0;
};

/// For every anchor: the farthest same-identity record and the nearest
/// different-identity record, ties broken toward the smallest index.
/// Requires at least two identities and at least two records per identity,
/// else DegenerateBatch.
std::vector<TripletSelection> mine_hard_triplets(
    const std::vector<FeatureRecord>& batch);

/// Hinge triplet loss: mean over anchors of max(0, margin + d_pos - d_neg).
double triplet_loss(const std::vector<TripletSelection>& selections,
                    double margin);

/// The uncorrected "+" form, mean of (margin + d_pos + d_neg). Kept for
/// side-by-side comparison with the hinge form; not used in total_loss.
double triplet_loss_additive(const std::vector<TripletSelection>& selections,
                             double margin);

/// Mean negative log-likelihood of the true identity, natural log,
/// probabilities clamped below at 1e-12. Throws MissingProbs when a record
/// lacks probabilities and LabelOutOfRange when an identity is not a valid
/// class index.
double id_loss(const std::vector<FeatureRecord>& batch);

struct LossBreakdown {
  double triplet = 0.0;
  double id = 0.0;
  double total = 0.0;
};

/// Mines triplets on the batch and returns (triplet, id, triplet + id).
LossBreakdown total_loss(const std::vector<FeatureRecord>& batch,
                         double margin);

}  // namespace colordrop

#endif  // COLORDROP_LOSSES_HPP_
