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

#include "colordrop/image.hpp"

#include <string>
#include <utility>

#include "colordrop/errors.hpp"

namespace colordrop {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw InvalidArgument("image dimensions must be >= 1, got " +
                          std::to_string(width) + "x" +
                          std::to_string(height));
  }
}

}  // namespace

ImageBuffer::ImageBuffer(int width, int height)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(3 * static_cast<std::size_t>(width) * height, 0);
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  const std::size_t expected = 3 * static_cast<std::size_t>(width) * height;
  if (data_.size() != expected) {
    throw InvalidArgument("pixel buffer has " + std::to_string(data_.size()) +
                          " bytes, expected " + std::to_string(expected));
  }
}

}  // namespace colordrop
