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
#include <cmath>

#include "dronespec/spectral.hpp"

namespace dronespec::spectral {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw SpectralError(ErrorKind::InvalidParameter, what);
}

bool is_fraction(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ObscuraParams::validate() const {
  require(blur_limit >= 3 && blur_limit % 2 == 1, "blur_limit must be odd and >= 3");
  require(is_fraction(fog_coeff), "fog_coeff must lie in [0, 1]");
  require(is_fraction(cb_limit), "cb_limit must lie in [0, 1]");
  require(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0, "severity weights must be >= 0");
  require(normalization.blur_divisor > 0.0, "blur_divisor must be > 0");
}

SeverityScore severity_score(double m_b, double f_g, double c_b, double alpha, double beta,
                             double gamma) {
  for (double v : {m_b, f_g, c_b, alpha, beta, gamma}) {
    if (!(v >= 0.0)) throw SpectralError(ErrorKind::NegativeInput, "severity inputs must be >= 0");
  }
  return SeverityScore{alpha * m_b + beta * f_g + gamma * c_b};
}

ObscuraDraw draw_obscura(const ObscuraParams& params, TransformSeed seed, std::string_view image_id) {
  params.validate();
  RandomStream rng(derive_stream_seed(seed, image_id));
  ObscuraDraw d;
  // Draw order is part of the determinism contract: kernel, angle, fog, factor, shift.
  const std::int64_t odd_choices = (params.blur_limit - 3) / 2 + 1;
  d.kernel_len = 3 + 2 * static_cast<int>(rng.uniform_int(0, odd_choices - 1));
  d.angle_deg = rng.uniform(0.0, 180.0);
  d.fog_coeff = rng.uniform(0.5 * params.fog_coeff, params.fog_coeff);
  d.contrast_factor = std::max(rng.uniform(1.0 - params.cb_limit, 1.0 + params.cb_limit), 1e-6);
  d.brightness_shift = rng.uniform(-params.cb_limit, params.cb_limit);
  return d;
}

SeverityScore obscura_severity(const ObscuraParams& params, const ObscuraDraw& draw) {
  const double m_b = static_cast<double>(draw.kernel_len - 1) / params.normalization.blur_divisor;
  const double f_g = params.normalization.fog_source == FogMagnitude::Configured ? params.fog_coeff
                                                                                 : draw.fog_coeff;
  return severity_score(m_b, f_g, params.cb_limit, params.alpha, params.beta, params.gamma);
}

ObscuraResult obscura_transform(const ImageBuffer& img, const ObscuraParams& params,
                                TransformSeed seed, std::string_view image_id) {
  const ObscuraDraw d = draw_obscura(params, seed, image_id);
  ImageBuffer out = motion_blur(img, d.kernel_len, d.angle_deg);
  out = apply_fog(out, d.fog_coeff);
  out = adjust_contrast_brightness(out, d.contrast_factor, d.brightness_shift);
  return ObscuraResult{std::move(out), obscura_severity(params, d), d};
}

}  // namespace dronespec::spectral
