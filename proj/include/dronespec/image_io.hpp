// Copyright 2026 The dronespec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file image_io.hpp
/// @brief PNG read/write and JPEG ingest (libpng / libjpeg).
///
/// PNG encoding uses fixed settings and writes no time or text chunks, so the
/// same pixels always produce the same bytes.

#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "dronespec/image.hpp"

namespace dronespec::io {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decodes PNG (8-bit gray, gray+alpha, RGB, RGBA; 16-bit is reduced) or JPEG.
/// Gray sources are expanded to three equal channels; alpha is dropped.
ImageBuffer read_image(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const ImageBuffer& image);
std::vector<std::uint8_t> encode_png(const GrayImage& image);

void write_png(const std::filesystem::path& path, const ImageBuffer& image);
void write_png(const std::filesystem::path& path, const GrayImage& image);

}  // namespace dronespec::io
