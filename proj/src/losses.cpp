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

#include "colordrop/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "colordrop/errors.hpp"

namespace colordrop {

namespace {
constexpr double kProbFloor = 1e-12;
}

double pairwise_distance(std::span<const double> a,
                         std::span<const double> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("vectors have dimensions " +
                            std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

std::vector<TripletSelection> mine_hard_triplets(
    const std::vector<FeatureRecord>& batch) {
  const std::size_t n = batch.size();
  std::unordered_map<int, std::size_t> label_counts;
  for (const auto& rec : batch) {
    ++label_counts[rec.identity];
  }
  if (label_counts.size() < 2) {
    throw DegenerateBatch("hard mining needs at least two identities");
  }
  for (const auto& [label, count] : label_counts) {
    if (count < 2) {
      throw DegenerateBatch("identity " + std::to_string(label) +
                            " has a single record");
    }
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (batch[i].feature.size() != batch[0].feature.size()) {
      throw DimensionMismatch("batch features have mixed dimensions");
    }
  }

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = pairwise_distance(batch[i].feature, batch[j].feature);
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }
  }

  std::vector<TripletSelection> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    TripletSelection sel;
    sel.anchor = i;
    bool have_pos = false;
    bool have_neg = false;
    // Ascending scans with strict comparisons keep the smallest index on
    // ties.
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || batch[j].identity != batch[i].identity) {
        continue;
      }
      const double d = dist[i * n + j];
      if (!have_pos || d > sel.d_pos) {
        sel.positive = j;
        sel.d_pos = d;
        have_pos = true;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (batch[k].identity == batch[i].identity) {
        continue;
      }
      const double d = dist[i * n + k];
      if (!have_neg || d < sel.d_neg) {
        sel.negative = k;
        sel.d_neg = d;
        have_neg = true;
      }
    }
    out.push_back(sel);
  }
  return out;
}

double triplet_loss(const std::vector<TripletSelection>& selections,
                    double margin) {
  if (selections.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const auto& sel : selections) {
    sum += std::max(0.0, margin + sel.d_pos - sel.d_neg);
  }
  return sum / static_cast<double>(selections.size());
}

double triplet_loss_additive(const std::vector<TripletSelection>& selections,
                             double margin) {
  if (selections.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const auto& sel : selections) {
    sum += margin + sel.d_pos + sel.d_neg;
  }
  return sum / static_cast<double>(selections.size());
}

double id_loss(const std::vector<FeatureRecord>& batch) {
  if (batch.empty()) {
    return 0.0;
  }
  double sum = 0.0;
  for (const auto& rec : batch) {
    if (!rec.probs) {
      throw MissingProbs("record lacks classifier probabilities");
    }
    if (rec.identity < 0 ||
        static_cast<std::size_t>(rec.identity) >= rec.probs->size()) {
      throw LabelOutOfRange("identity " + std::to_string(rec.identity) +
                            " outside [0, " +
                            std::to_string(rec.probs->size()) + ")");
    }
    const double p =
        std::max((*rec.probs)[static_cast<std::size_t>(rec.identity)],
                 kProbFloor);
    sum += -std::log(p);
  }
  return sum / static_cast<double>(batch.size());
}

LossBreakdown total_loss(const std::vector<FeatureRecord>& batch,
                         double margin) {
  LossBreakdown out;
  out.triplet = triplet_loss(mine_hard_triplets(batch), margin);
  out.id = id_loss(batch);
  out.total = out.triplet + out.id;
  return out;
}

}  // namespace colordrop
