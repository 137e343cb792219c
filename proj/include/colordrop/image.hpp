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

#ifndef COLORDROP_IMAGE_HPP_
#define COLORDROP_IMAGE_HPP_

#include <cstdint>
#include <vector>

namespace colordrop {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

/// Owned 8-bit RGB raster, row-major, interleaved channels.
class ImageBuffer {
 public:
  /// Black image of the given size. Throws InvalidArgument unless both
  /// dimensions are >= 1.
  ImageBuffer(int width, int height);

  /// Adopts interleaved RGB bytes; data.size() must equal 3*width*height.
  ImageBuffer(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }

  Rgb at(int x, int y) const {
    const std::uint8_t* p = &data_[offset(x, y)];
    return Rgb{p[0], p[1], p[2]};
  }

  void set(int x, int y, Rgb c) {
    std::uint8_t* p = &data_[offset(x, y)];
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  const std::vector<std::uint8_t>& data() const { return data_; }
  std::vector<std::uint8_t>& data() { return data_; }

  bool operator==(const ImageBuffer&) const = default;

 private:
  std::size_t offset(int x, int y) const {
    return 3 * (static_cast<std::size_t>(y) * width_ + x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// Integer rectangle, top-left corner plus size.
struct RectRegion {
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  bool fits_within(int image_w, int image_h) const {
    return x >= 0 && y >= 0 && w >= 1 && h >= 1 && x + w <= image_w &&
           y + h <= image_h;
  }

  bool operator==(const RectRegion&) const = default;
};

}  // namespace colordrop

#endif  // COLORDROP_IMAGE_HPP_
