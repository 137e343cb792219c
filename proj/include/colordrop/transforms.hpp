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

#ifndef COLORDROP_TRANSFORMS_HPP_
#define COLORDROP_TRANSFORMS_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "colordrop/image.hpp"
#include "colordrop/rng.hpp"

namespace colordrop {

/// The color-free intermediary a transform substitutes for color pixels.
enum class ColorDropMode { kGrayscale, kSketch };

enum class TransformKind { kNone, kGlobal, kLocal, kGlobalLocal };

std::string to_string(ColorDropMode mode);
std::string to_string(TransformKind kind);

/// Knobs for the color-dropout family.
///
/// p is the probability of the global transform, p_r of the local one.
/// s_l/s_h bound the local rectangle's area as a fraction of the image and
/// r_1/r_2 bound its height/width aspect ratio. Rectangle sampling gives up
/// after retry_cap attempts and the image passes through unchanged.
struct AugmentConfig {
  double p = 0.05;
  double p_r = 0.4;
  double s_l = 0.02;
  double s_h = 0.4;
  double r_1 = 0.3;
  double r_2 = 1.0 / 0.3;
  ColorDropMode mode = ColorDropMode::kGrayscale;
  bool combine = true;
  unsigned retry_cap = 100;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument when a field is out of its documented range.
  void validate() const;
};

/// Result of one probabilistic transform application.
///
/// applied == false implies image is pixel-identical to the input; a region
/// is present iff a local transform fired.
struct TransformOutcome {
  ImageBuffer image;
  bool applied = false;
  TransformKind kind = TransformKind::kNone;
  std::optional<RectRegion> region;
};

/// BT.601 luma replicated onto all three channels. Idempotent, preserves
/// dimensions.
ImageBuffer to_grayscale(const ImageBuffer& img);

/// Inverted, per-image-normalized Sobel edge magnitude: edges come out dark
/// on a light background. A constant image maps to all white.
ImageBuffer to_sketch(const ImageBuffer& img);

/// Draws a rectangle with area ratio in [s_l, s_h] and aspect ratio in
/// [r_1, r_2], retrying until it fits inside width x height. Returns nullopt
/// once retry_cap attempts are exhausted; side lengths are rounded to the
/// nearest pixel with a minimum of 1.
std::optional<RectRegion> sample_rect(int width, int height,
                                      const AugmentConfig& cfg,
                                      RngStream& rng);

/// Global transform: with probability cfg.p the whole image is replaced by
/// its grayscale (or sketch) version, otherwise it passes through.
TransformOutcome ggt(const ImageBuffer& img, const AugmentConfig& cfg,
                     RngStream& rng);

/// Local transform: with probability cfg.p_r a sampled rectangle is replaced
/// by the same rectangle of the converted image; everything outside stays
/// bit-identical. Sampler exhaustion degrades to a pass-through.
TransformOutcome lgt(const ImageBuffer& img, const AugmentConfig& cfg,
                     RngStream& rng);

/// Combined policy: global first; the local transform runs only when the
/// global one did not fire (a fully converted image has no color left to
/// drop). Requires cfg.combine.
TransformOutcome rcd(const ImageBuffer& img, const AugmentConfig& cfg,
                     RngStream& rng);

/// Pipeline entry point used by corpus processing: rcd() when cfg.combine,
/// otherwise an independent global pass followed by an independent local
/// pass (which may mark an outcome kGlobalLocal).
TransformOutcome augment(const ImageBuffer& img, const AugmentConfig& cfg,
                         RngStream& rng);

}  // namespace colordrop

#endif  // COLORDROP_TRANSFORMS_HPP_
