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

#ifndef COLORDROP_IMAGE_IO_HPP_
#define COLORDROP_IMAGE_IO_HPP_

#include <string>

#include "colordrop/image.hpp"

namespace colordrop {

/// Decodes a PNG or JPEG file. Throws IoError if the file is missing or
/// unreadable, DecodeError if it cannot be decoded.
ImageBuffer load_image(const std::string& path);

/// Encodes by extension (.png, .jpg, .jpeg). PNG is lossless: a saved image
/// loads back pixel-identical. Throws IoError on write failure.
void save_image(const ImageBuffer& img, const std::string& path);

}  // namespace colordrop

#endif  // COLORDROP_IMAGE_IO_HPP_
