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

#ifndef COLORDROP_MANIFEST_HPP_
#define COLORDROP_MANIFEST_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace colordrop {

/// One labeled corpus image.
///
/// Junk and distractor entries (identity < 1, e.g. Market-style -1/0000
/// labels) are ingested but flagged: the batch sampler skips them and the
/// evaluator drops them from rankings.
struct SampleRecord {
  std::string path;
  int identity = 0;
  int camera = 0;
  std::size_t index = 0;  // stable corpus ordinal

  bool distractor() const { return identity < 1; }
  bool operator==(const SampleRecord&) const = default;
};

struct Manifest {
  std::vector<SampleRecord> records;

  /// Number of distinct identity labels, distractors included.
  int identities() const;

  bool operator==(const Manifest&) const = default;
};

/// Scans a directory of images named `<pid>_c<cam>...` (Market-style).
/// Records come back sorted by path with 0-based indices. Image files whose
/// names do not parse are appended to `skipped` (when given) and ignored.
/// Throws IoError for an unreadable directory, EmptyCorpus when nothing
/// parses.
Manifest scan_market_layout(const std::string& dir,
                            std::vector<std::string>* skipped = nullptr);

/// JSON-Lines manifest, one {"camera":..,"identity":..,"path":..} object per
/// line. Unknown keys are ignored on load, so augmentation reports load as
/// plain manifests. Round trips are lossless and order-preserving.
Manifest load_manifest(const std::string& path);
void save_manifest(const Manifest& manifest, const std::string& path);

}  // namespace colordrop

#endif  // COLORDROP_MANIFEST_HPP_
