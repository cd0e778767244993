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

/// @file spectral.hpp
/// @brief Photometric modality simulation: grayscale, pseudo-thermal,
/// night-vision and obscuration (motion blur, fog, contrast/brightness).
///
/// Every transform is a pure function of its inputs and preserves image
/// dimensions. Rounding is half away from zero throughout.

#pragma once

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dronespec/image.hpp"
#include "dronespec/seed.hpp"

namespace dronespec::spectral {

enum class ErrorKind {
  InvalidParameter,
  NegativeInput,
  LutAssetInvalid,
};

std::string_view error_name(ErrorKind kind);

class SpectralError : public std::runtime_error {
 public:
  SpectralError(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// BT.601 luma, unrounded.
inline double luma(Rgb p) { return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b; }

/// 256-entry color lookup indexed by intensity. Entry 0 must have the lowest
/// luma and entry 255 the highest.
class ColorMapLUT {
 public:
  explicit ColorMapLUT(const std::array<Rgb, 256>& entries);

  const Rgb& operator[](std::uint8_t i) const noexcept { return entries_[i]; }
  const std::array<Rgb, 256>& entries() const noexcept { return entries_; }

  static ColorMapLUT identity();

 private:
  std::array<Rgb, 256> entries_;
};

/// The inferno table compiled into the library (same data as
/// data/inferno_lut.txt).
const ColorMapLUT& inferno_lut();
std::string_view inferno_provenance();
std::uint32_t inferno_checksum();

/// Parses the `index r g b` asset format. The header line must carry
/// `crc32=<hex>` matching the CRC-32 of the body bytes.
ColorMapLUT load_lut_asset(const std::filesystem::path& path);
ColorMapLUT parse_lut_asset(std::string_view text);
std::string format_lut_asset(const ColorMapLUT& lut, std::string_view provenance);

// ---------------------------------------------------------------------------
// Grayscale / thermal / night vision

GrayImage to_grayscale(const ImageBuffer& img);

/// Min-max stretch to [0, 255]; a constant image maps to all zeros.
GrayImage normalize_contrast(const GrayImage& gray);

ImageBuffer apply_colormap(const GrayImage& gray, const ColorMapLUT& lut);

/// apply_colormap(normalize_contrast(to_grayscale(img)), inferno_lut()).
ImageBuffer thermal_transform(const ImageBuffer& img);

/// clamp(round(gain * x + bias)) per pixel. Requires gain > 0.
GrayImage linear_scale_abs(const GrayImage& gray, double gain, double bias);

struct NightVisionParams {
  double gain = 1.2;
  double bias = 30.0;
  double weight_r = 0.1;
  double weight_g = 1.0;
  double weight_b = 0.1;

  /// Throws InvalidParameter unless gain > 0, 0 <= bias <= 255 and
  /// 0 <= weight_r, weight_b <= weight_g <= 1.5.
  void validate() const;
};

ImageBuffer night_vision_transform(const ImageBuffer& img, const NightVisionParams& params);

// ---------------------------------------------------------------------------
// Obscuration

/// Pixel offsets of a one-pixel-wide line of `kernel_len` taps through the
/// kernel centre at `angle_deg` (0 = horizontal, counter-clockwise, y down).
/// Duplicate taps produced by rounding are merged.
std::vector<std::pair<int, int>> motion_blur_taps(int kernel_len, double angle_deg);

/// Mean over the line taps with edge replication. kernel_len must be odd and
/// >= 1; kernel_len 1 is the identity.
ImageBuffer motion_blur(const ImageBuffer& img, int kernel_len, double angle_deg);

/// Uniform blend toward white: (1 - fog) * x + fog * 255. Requires fog in [0, 1].
ImageBuffer apply_fog(const ImageBuffer& img, double fog_coeff);

/// clamp(round(factor * (x - 128) + 128 + 255 * shift)). Requires factor > 0.
ImageBuffer adjust_contrast_brightness(const ImageBuffer& img, double contrast_factor,
                                       double brightness_shift);

struct SeverityScore {
  double value = 0.0;
};

/// alpha * m_b + beta * f_g + gamma * c_b. Any negative input is NegativeInput.
SeverityScore severity_score(double m_b, double f_g, double c_b, double alpha = 1.0,
                             double beta = 1.0, double gamma = 1.0);

enum class FogMagnitude {
  Configured,  // F_g term = the configured fog coefficient
  Realized,    // F_g term = the coefficient actually drawn for the image
};

/// Maps realized obscuration magnitudes onto severity components:
/// M_b = (k - 1) / blur_divisor, F_g per fog_source, C_b = configured limit.
struct SeverityNormalization {
  double blur_divisor = 40.0;
  FogMagnitude fog_source = FogMagnitude::Configured;
};

struct ObscuraParams {
  int blur_limit = 3;
  double fog_coeff = 0.1;
  double cb_limit = 0.1;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  SeverityNormalization normalization;

  void validate() const;
};

/// Magnitudes drawn for one image, in draw order.
struct ObscuraDraw {
  int kernel_len = 1;
  double angle_deg = 0.0;
  double fog_coeff = 0.0;
  double contrast_factor = 1.0;
  double brightness_shift = 0.0;
};

ObscuraDraw draw_obscura(const ObscuraParams& params, TransformSeed seed, std::string_view image_id);

struct ObscuraResult {
  ImageBuffer image;
  SeverityScore severity;
  ObscuraDraw draw;
};

/// Severity of a realized draw under the params' normalization.
SeverityScore obscura_severity(const ObscuraParams& params, const ObscuraDraw& draw);

/// Blur, then fog, then contrast/brightness, with magnitudes drawn from the
/// image's own stream. Bit-identical for identical (params, seed, image_id).
ObscuraResult obscura_transform(const ImageBuffer& img, const ObscuraParams& params,
                                TransformSeed seed, std::string_view image_id);

}  // namespace dronespec::spectral
