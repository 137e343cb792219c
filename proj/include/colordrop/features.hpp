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

#ifndef COLORDROP_FEATURES_HPP_
#define COLORDROP_FEATURES_HPP_

#include <optional>
#include <string>
#include <vector>

namespace colordrop {

/// One embedded sample: identity label, camera id and a fixed-dimension
/// feature vector, optionally with classifier probabilities over C classes.
struct FeatureRecord {
  int identity = 0;
  int camera = 0;
  std::string path;
  std::vector<double> feature;
  std::optional<std::vector<double>> probs;

  bool distractor() const { return identity < 1; }
};

/// Reads the feature CSV `identity,camera,path,f0..f{d-1}[,p0..p{C-1}]`.
/// Ragged rows, non-numeric cells and probability rows that are negative or
/// do not sum to 1 (within 1e-6) raise ParseError with the offending row
/// number.
std::vector<FeatureRecord> load_features_csv(const std::string& path);

/// Writes the same layout. Paths must not contain commas.
void save_features_csv(const std::vector<FeatureRecord>& records,
                       const std::string& path);

}  // namespace colordrop

#endif  // COLORDROP_FEATURES_HPP_
