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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "dronespec/spectral.hpp"

namespace dronespec::spectral {

namespace {

using ByteTable = std::array<std::uint8_t, 256>;

// Per-intensity ops are tabulated once; the table is the op evaluated at every
// possible input, so results are identical to computing per pixel.
template <typename F>
ByteTable tabulate(F f) {
  ByteTable t;
  for (int x = 0; x < 256; ++x) t[static_cast<std::size_t>(x)] = f(static_cast<double>(x));
  return t;
}

ImageBuffer map_channels(const ImageBuffer& img, const ByteTable& t) {
  ImageBuffer out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = Rgb{t[src[i].r], t[src[i].g], t[src[i].b]};
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw SpectralError(ErrorKind::InvalidParameter, what);
}

}  // namespace

GrayImage to_grayscale(const ImageBuffer& img) {
  GrayImage out(img.width(), img.height());
  auto src = img.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    // round(0.299 R + 0.587 G + 0.114 B) in exact integer arithmetic.
    const std::uint32_t acc = 299u * src[i].r + 587u * src[i].g + 114u * src[i].b;
    dst[i] = static_cast<std::uint8_t>((acc + 500u) / 1000u);
  }
  return out;
}

GrayImage normalize_contrast(const GrayImage& gray) {
  auto px = gray.pixels();
  const auto [lo_it, hi_it] = std::minmax_element(px.begin(), px.end());
  const std::uint32_t lo = *lo_it;
  const std::uint32_t hi = *hi_it;
  if (lo == hi) return GrayImage(gray.width(), gray.height(), std::uint8_t{0});

  const std::uint32_t range = hi - lo;
  ByteTable t{};
  for (std::uint32_t x = lo; x <= hi; ++x) {
    const std::uint32_t num = (x - lo) * 255u;
    t[x] = static_cast<std::uint8_t>((2u * num + range) / (2u * range));
  }
  GrayImage out(gray.width(), gray.height());
  auto dst = out.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) dst[i] = t[px[i]];
  return out;
}

ImageBuffer apply_colormap(const GrayImage& gray, const ColorMapLUT& lut) {
  ImageBuffer out(gray.width(), gray.height());
  auto src = gray.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[src[i]];
  return out;
}

ImageBuffer thermal_transform(const ImageBuffer& img) {
  return apply_colormap(normalize_contrast(to_grayscale(img)), inferno_lut());
}

GrayImage linear_scale_abs(const GrayImage& gray, double gain, double bias) {
  require(gain > 0.0, "gain must be > 0");
  const auto t = tabulate([&](double x) { return saturate_u8(gain * x + bias); });
  GrayImage out(gray.width(), gray.height());
  auto src = gray.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = t[src[i]];
  return out;
}

void NightVisionParams::validate() const {
  require(gain > 0.0, "night vision gain must be > 0");
  require(bias >= 0.0 && bias <= 255.0, "night vision bias must lie in [0, 255]");
  require(weight_r >= 0.0 && weight_b >= 0.0, "channel weights must be >= 0");
  require(weight_r <= weight_g && weight_b <= weight_g, "green weight must dominate");
  require(weight_g <= 1.5, "green weight must be <= 1.5");
}

ImageBuffer night_vision_transform(const ImageBuffer& img, const NightVisionParams& params) {
  params.validate();
  const GrayImage enhanced = linear_scale_abs(to_grayscale(img), params.gain, params.bias);
  const auto tr = tabulate([&](double g) { return saturate_u8(params.weight_r * g); });
  const auto tg = tabulate([&](double g) { return saturate_u8(params.weight_g * g); });
  const auto tb = tabulate([&](double g) { return saturate_u8(params.weight_b * g); });
  ImageBuffer out(img.width(), img.height());
  auto src = enhanced.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = Rgb{tr[src[i]], tg[src[i]], tb[src[i]]};
  return out;
}

std::vector<std::pair<int, int>> motion_blur_taps(int kernel_len, double angle_deg) {
  require(kernel_len >= 1 && kernel_len % 2 == 1, "motion blur kernel length must be odd and >= 1");
  const double rad = angle_deg * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  const int half = kernel_len / 2;
  std::vector<std::pair<int, int>> taps;
  for (int t = -half; t <= half; ++t) {
    const int dx = static_cast<int>(round_half_away(t * c));
    const int dy = static_cast<int>(round_half_away(-t * s));
    taps.emplace_back(dx, dy);
  }
  std::sort(taps.begin(), taps.end());
  taps.erase(std::unique(taps.begin(), taps.end()), taps.end());
  return taps;
}

ImageBuffer motion_blur(const ImageBuffer& img, int kernel_len, double angle_deg) {
  const auto taps = motion_blur_taps(kernel_len, angle_deg);
  if (taps.size() == 1) return img;
  const int w = img.width();
  const int h = img.height();
  const std::uint32_t n = static_cast<std::uint32_t>(taps.size());
  ImageBuffer out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::uint32_t sr = 0, sg = 0, sb = 0;
      for (const auto& [dx, dy] : taps) {
        const Rgb& p = img.at(std::clamp(x + dx, 0, w - 1), std::clamp(y + dy, 0, h - 1));
        sr += p.r;
        sg += p.g;
        sb += p.b;
      }
      // Exact round-half-away of sum / n.
      out.at(x, y) = Rgb{static_cast<std::uint8_t>((2u * sr + n) / (2u * n)),
                         static_cast<std::uint8_t>((2u * sg + n) / (2u * n)),
                         static_cast<std::uint8_t>((2u * sb + n) / (2u * n))};
    }
  }
  return out;
}

ImageBuffer apply_fog(const ImageBuffer& img, double fog_coeff) {
  require(fog_coeff >= 0.0 && fog_coeff <= 1.0, "fog coefficient must lie in [0, 1]");
  return map_channels(img, tabulate([&](double x) {
                        return saturate_u8((1.0 - fog_coeff) * x + fog_coeff * 255.0);
                      }));
}

ImageBuffer adjust_contrast_brightness(const ImageBuffer& img, double contrast_factor,
                                       double brightness_shift) {
  require(contrast_factor > 0.0, "contrast factor must be > 0");
  return map_channels(img, tabulate([&](double x) {
                        return saturate_u8(contrast_factor * (x - 128.0) + 128.0 +
                                           255.0 * brightness_shift);
                      }));
}

}  // namespace dronespec::spectral
