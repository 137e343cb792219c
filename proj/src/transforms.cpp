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

#include "colordrop/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "colordrop/errors.hpp"

namespace colordrop {

namespace {

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

std::uint8_t luma601(Rgb c) {
  const double y = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
  return static_cast<std::uint8_t>(std::clamp(round_half_up(y), 0, 255));
}

ImageBuffer convert(const ImageBuffer& img, ColorDropMode mode) {
  return mode == ColorDropMode::kGrayscale ? to_grayscale(img)
                                           : to_sketch(img);
}

TransformOutcome pass_through(const ImageBuffer& img) {
  return TransformOutcome{img, false, TransformKind::kNone, std::nullopt};
}

/// Copies `rect` of `src` into a copy of `dst`; pixels outside stay intact.
ImageBuffer blend_region(const ImageBuffer& dst, const ImageBuffer& src,
                         const RectRegion& rect) {
  if (!rect.fits_within(dst.width(), dst.height())) {
    throw InvalidArgument("region exceeds image bounds");
  }
  ImageBuffer out = dst;
  for (int y = rect.y; y < rect.y + rect.h; ++y) {
    for (int x = rect.x; x < rect.x + rect.w; ++x) {
      out.set(x, y, src.at(x, y));
    }
  }
  return out;
}

}  // namespace

std::string to_string(ColorDropMode mode) {
  return mode == ColorDropMode::kGrayscale ? "grayscale" : "sketch";
}

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::kNone:
      return "none";
    case TransformKind::kGlobal:
      return "global";
    case TransformKind::kLocal:
      return "local";
    case TransformKind::kGlobalLocal:
      return "global+local";
  }
  return "none";
}

void AugmentConfig::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidArgument("p must lie in [0, 1]");
  }
  if (!(p_r >= 0.0 && p_r <= 1.0)) {
    throw InvalidArgument("p_r must lie in [0, 1]");
  }
  if (!(s_l > 0.0 && s_l <= s_h && s_h < 1.0)) {
    throw InvalidArgument("area ratio range must satisfy 0 < s_l <= s_h < 1");
  }
  if (!(r_1 > 0.0 && r_1 <= r_2)) {
    throw InvalidArgument("aspect ratio range must satisfy 0 < r_1 <= r_2");
  }
  if (retry_cap == 0) {
    throw InvalidArgument("retry_cap must be >= 1");
  }
}

ImageBuffer to_grayscale(const ImageBuffer& img) {
  ImageBuffer out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const std::uint8_t v = luma601(img.at(x, y));
      out.set(x, y, Rgb{v, v, v});
    }
  }
  return out;
}

ImageBuffer to_sketch(const ImageBuffer& img) {
  const int w = img.width();
  const int h = img.height();
  std::vector<double> gray(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      gray[static_cast<std::size_t>(y) * w + x] = luma601(img.at(x, y));
    }
  }
  // 3x3 Sobel with clamp-to-edge borders.
  auto g = [&](int x, int y) {
    x = std::clamp(x, 0, w - 1);
    y = std::clamp(y, 0, h - 1);
    return gray[static_cast<std::size_t>(y) * w + x];
  };
  std::vector<double> mag(static_cast<std::size_t>(w) * h);
  double max_mag = 0.0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double gx = (g(x + 1, y - 1) + 2 * g(x + 1, y) + g(x + 1, y + 1)) -
                        (g(x - 1, y - 1) + 2 * g(x - 1, y) + g(x - 1, y + 1));
      const double gy = (g(x - 1, y + 1) + 2 * g(x, y + 1) + g(x + 1, y + 1)) -
                        (g(x - 1, y - 1) + 2 * g(x, y - 1) + g(x + 1, y - 1));
      const double m = std::sqrt(gx * gx + gy * gy);
      mag[static_cast<std::size_t>(y) * w + x] = m;
      max_mag = std::max(max_mag, m);
    }
  }
  ImageBuffer out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int v = 255;
      if (max_mag > 0.0) {
        v = 255 - round_half_up(
                      255.0 * mag[static_cast<std::size_t>(y) * w + x] /
                      max_mag);
      }
      const auto b = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
      out.set(x, y, Rgb{b, b, b});
    }
  }
  return out;
}

std::optional<RectRegion> sample_rect(int width, int height,
                                      const AugmentConfig& cfg,
                                      RngStream& rng) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("sample_rect needs positive image dimensions");
  }
  // Degenerate ranges (s_l == s_h, r_1 == r_2) are valid configs but not
  // valid uniform() ranges.
  auto draw = [&rng](double lo, double hi) {
    return lo < hi ? rng.uniform(lo, hi) : lo;
  };
  const double area = static_cast<double>(width) * height;
  for (unsigned attempt = 0; attempt < cfg.retry_cap; ++attempt) {
    const double target_area = draw(cfg.s_l, cfg.s_h) * area;
    const double aspect = draw(cfg.r_1, cfg.r_2);
    const int rect_h =
        std::max(1, round_half_up(std::sqrt(target_area * aspect)));
    const int rect_w =
        std::max(1, round_half_up(std::sqrt(target_area / aspect)));
    const int x =
        static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(width)));
    const int y =
        static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(height)));
    if (x + rect_w <= width && y + rect_h <= height) {
      return RectRegion{x, y, rect_w, rect_h};
    }
  }
  return std::nullopt;
}

TransformOutcome ggt(const ImageBuffer& img, const AugmentConfig& cfg,
                     RngStream& rng) {
  const double p1 = rng.uniform01();
  if (p1 >= cfg.p) {
    return pass_through(img);
  }
  return TransformOutcome{convert(img, cfg.mode), true, TransformKind::kGlobal,
                          std::nullopt};
}

TransformOutcome lgt(const ImageBuffer& img, const AugmentConfig& cfg,
                     RngStream& rng) {
  const double p1 = rng.uniform01();
  if (p1 >= cfg.p_r) {
    return pass_through(img);
  }
  const ImageBuffer converted = convert(img, cfg.mode);
  const auto rect = sample_rect(img.width(), img.height(), cfg, rng);
  if (!rect) {
    return pass_through(img);
  }
  return TransformOutcome{blend_region(img, converted, *rect), true,
                          TransformKind::kLocal, rect};
}

TransformOutcome rcd(const ImageBuffer& img, const AugmentConfig& cfg,
                     RngStream& rng) {
  if (!cfg.combine) {
    throw InvalidArgument("rcd requires cfg.combine");
  }
  TransformOutcome global = ggt(img, cfg, rng);
  if (global.applied) {
    return global;
  }
  return lgt(img, cfg, rng);
}

TransformOutcome augment(const ImageBuffer& img, const AugmentConfig& cfg,
                         RngStream& rng) {
  if (cfg.combine) {
    return rcd(img, cfg, rng);
  }
  TransformOutcome global = ggt(img, cfg, rng);
  TransformOutcome local = lgt(global.image, cfg, rng);
  if (!local.applied) {
    return global;
  }
  const TransformKind kind =
      global.applied ? TransformKind::kGlobalLocal : TransformKind::kLocal;
  return TransformOutcome{std::move(local.image), true, kind, local.region};
}

}  // namespace colordrop
