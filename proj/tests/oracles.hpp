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
//
// Independent reference implementations the tests compare the library
// against. Everything here is written from the definitions, not by calling
// into the library.

#ifndef COLORDROP_TESTS_ORACLES_HPP_
#define COLORDROP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "colordrop/features.hpp"
#include "colordrop/image.hpp"
#include "colordrop/losses.hpp"

namespace oracles {

inline int luma(int r, int g, int b) {
  const double y = 0.299 * r + 0.587 * g + 0.114 * b;
  int v = static_cast<int>(std::floor(y + 0.5));
  return std::min(255, std::max(0, v));
}

/// Kernel-table Sobel sketch: luma grid, clamp-to-edge convolution,
/// magnitude scaled by the per-image maximum, inverted.
inline colordrop::ImageBuffer sketch(const colordrop::ImageBuffer& img) {
  const int w = img.width();
  const int h = img.height();
  static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  std::vector<int> gray(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto c = img.at(x, y);
      gray[static_cast<std::size_t>(y) * w + x] = luma(c.r, c.g, c.b);
    }
  }
  std::vector<double> mag(static_cast<std::size_t>(w) * h);
  double max_mag = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double gx = 0.0;
      double gy = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int sx = std::min(w - 1, std::max(0, x + dx));
          const int sy = std::min(h - 1, std::max(0, y + dy));
          const double v = gray[static_cast<std::size_t>(sy) * w + sx];
          gx += kx[dy + 1][dx + 1] * v;
          gy += ky[dy + 1][dx + 1] * v;
        }
      }
      const double m = std::hypot(gx, gy);
      mag[static_cast<std::size_t>(y) * w + x] = m;
      if (m > max_mag) {
        max_mag = m;
      }
    }
  }
  colordrop::ImageBuffer out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int v = 255;
      if (max_mag > 0.0) {
        const double scaled =
            255.0 * mag[static_cast<std::size_t>(y) * w + x] / max_mag;
        v = 255 - static_cast<int>(std::floor(scaled + 0.5));
      }
      v = std::min(255, std::max(0, v));
      const auto b = static_cast<std::uint8_t>(v);
      out.set(x, y, colordrop::Rgb{b, b, b});
    }
  }
  return out;
}

inline double squared_distance(const std::vector<double>& a,
                               const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return sum;
}

/// Exhaustive hard mining: for every anchor scan all same-label records for
/// the largest distance and all other-label records for the smallest,
/// keeping the first (smallest-index) extremum.
inline std::vector<colordrop::TripletSelection> brute_triplets(
    const std::vector<colordrop::FeatureRecord>& batch) {
  const std::size_t n = batch.size();
  std::vector<colordrop::TripletSelection> out;
  for (std::size_t i = 0; i < n; ++i) {
    colordrop::TripletSelection sel;
    sel.anchor = i;
    double best_pos = -1.0;
    double best_neg = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) {
        continue;
      }
      const double d2 = squared_distance(batch[i].feature, batch[j].feature);
      if (batch[j].identity == batch[i].identity) {
        if (best_pos < 0.0 || d2 > best_pos) {
          best_pos = d2;
          sel.positive = j;
        }
      } else {
        if (best_neg < 0.0 || d2 < best_neg) {
          best_neg = d2;
          sel.negative = j;
        }
      }
    }
    sel.d_pos = std::sqrt(best_pos);
    sel.d_neg = std::sqrt(best_neg);
    out.push_back(sel);
  }
  return out;
}

inline double triplet_scalar(
    const std::vector<colordrop::TripletSelection>& selections,
    double margin) {
  if (selections.empty()) {
    return 0.0;
  }
  long double acc = 0.0L;
  for (const auto& s : selections) {
    const double hinge = margin + s.d_pos - s.d_neg;
    if (hinge > 0.0) {
      acc += hinge;
    }
  }
  return static_cast<double>(acc /
                             static_cast<long double>(selections.size()));
}

inline double id_scalar(const std::vector<colordrop::FeatureRecord>& batch) {
  long double acc = 0.0L;
  for (const auto& rec : batch) {
    double p = (*rec.probs)[static_cast<std::size_t>(rec.identity)];
    if (p < 1e-12) {
      p = 1e-12;
    }
    acc -= std::log(p);
  }
  return static_cast<double>(acc / static_cast<long double>(batch.size()));
}

struct EvalOracleResult {
  std::vector<double> per_query_ap;
  std::vector<double> cmc;
  double map = 0.0;
  std::size_t valid_queries = 0;
};

/// Quadratic-time retrieval metrics: explicit candidate pairs, lexicographic
/// (distance, index) sort, precision-at-hit AP, first-hit CMC.
inline EvalOracleResult eval_quadratic(
    const std::vector<colordrop::FeatureRecord>& queries,
    const std::vector<colordrop::FeatureRecord>& gallery,
    std::size_t max_rank, bool camera_filter) {
  EvalOracleResult res;
  const std::size_t ranks = std::min(max_rank, gallery.size());
  std::vector<std::size_t> first_hits(ranks, 0);
  for (const auto& q : queries) {
    std::vector<std::pair<double, std::size_t>> order;
    std::size_t positives = 0;
    for (std::size_t gi = 0; gi < gallery.size(); ++gi) {
      const auto& g = gallery[gi];
      if (g.identity < 1) {
        continue;
      }
      if (camera_filter && g.identity == q.identity &&
          g.camera == q.camera) {
        continue;
      }
      double sum = 0.0;
      for (std::size_t i = 0; i < q.feature.size(); ++i) {
        const double d = q.feature[i] - g.feature[i];
        sum += d * d;
      }
      order.emplace_back(std::sqrt(sum), gi);
      if (g.identity == q.identity) {
        ++positives;
      }
    }
    if (positives == 0) {
      continue;
    }
    std::sort(order.begin(), order.end());
    double ap = 0.0;
    std::size_t hits = 0;
    std::size_t first = 0;
    for (std::size_t r = 0; r < order.size(); ++r) {
      if (gallery[order[r].second].identity != q.identity) {
        continue;
      }
      ++hits;
      ap += static_cast<double>(hits) / static_cast<double>(r + 1);
      if (first == 0) {
        first = r + 1;
      }
    }
    res.per_query_ap.push_back(ap / static_cast<double>(positives));
    if (first >= 1 && first <= ranks) {
      ++first_hits[first - 1];
    }
    ++res.valid_queries;
  }
  if (res.valid_queries == 0) {
    return res;
  }
  double sum = 0.0;
  for (const double ap : res.per_query_ap) {
    sum += ap;
  }
  res.map = sum / static_cast<double>(res.valid_queries);
  res.cmc.assign(ranks, 0.0);
  std::size_t seen = 0;
  for (std::size_t k = 0; k < ranks; ++k) {
    seen += first_hits[k];
    res.cmc[k] = static_cast<double>(seen) /
                 static_cast<double>(res.valid_queries);
  }
  return res;
}

/// Majority vote by counting +1s against -1s per instance.
inline double ensemble_error_counted(
    const std::vector<std::vector<int>>& rows,
    const std::vector<int>& expected) {
  const std::size_t m = expected.size();
  double err = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    int plus = 0;
    int minus = 0;
    for (const auto& row : rows) {
      (row[j] == 1 ? plus : minus) += 1;
    }
    const int verdict = plus > minus ? 1 : (plus < minus ? -1 : 0);
    if (verdict == 0) {
      err += 0.5;
    } else if (verdict != expected[j]) {
      err += 1.0;
    }
  }
  return err / static_cast<double>(m);
}

/// Random identity-balanced batch: k identities, m records each, features
/// either continuous or snapped to a coarse grid (to manufacture distance
/// ties), optional normalized probability rows over num_classes.
inline std::vector<colordrop::FeatureRecord> random_batch(
    std::mt19937& gen, int k, int m, int dim, bool quantized,
    bool with_probs, int num_classes) {
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_int_distribution<int> grid(-4, 4);
  std::exponential_distribution<double> expo(1.0);
  std::vector<colordrop::FeatureRecord> batch;
  for (int id = 0; id < k; ++id) {
    for (int r = 0; r < m; ++r) {
      colordrop::FeatureRecord rec;
      rec.identity = id;
      rec.camera = 1 + (r % 2);
      rec.feature.resize(dim);
      for (auto& f : rec.feature) {
        f = quantized ? grid(gen) / 2.0 : coord(gen);
      }
      if (with_probs) {
        std::vector<double> p(num_classes);
        double sum = 0.0;
        for (auto& v : p) {
          v = expo(gen) + 1e-3;
          sum += v;
        }
        for (auto& v : p) {
          v /= sum;
        }
        rec.probs = std::move(p);
      }
      batch.push_back(std::move(rec));
    }
  }
  return batch;
}

}  // namespace oracles

#endif  // COLORDROP_TESTS_ORACLES_HPP_
