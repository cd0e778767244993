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

#include <set>

#include <gtest/gtest.h>

#include "dronespec/seed.hpp"
#include "dronespec/spectral.hpp"
#include "fixtures.hpp"

namespace dronespec::spectral {
namespace {

TEST(SeedTest, KnownHashValues) {
  // FNV-1a 64 reference vectors.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  // splitmix64 output for state 0 after one increment.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(SeedTest, StreamSeedDependsOnIdAndGlobalSeed) {
  const TransformSeed a{1}, b{2};
  EXPECT_NE(derive_stream_seed(a, "img_000"), derive_stream_seed(a, "img_001"));
  EXPECT_NE(derive_stream_seed(a, "img_000"), derive_stream_seed(b, "img_000"));
  EXPECT_EQ(derive_stream_seed(a, "img_000"), derive_stream_seed(a, "img_000"));
}

TEST(SeedTest, UniformIntIsInRangeAndCoversIt) {
  RandomStream rng(5);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform_int(-2, 3);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(SeedTest, DegenerateUniformStillConsumesADraw) {
  RandomStream a(9), b(9);
  EXPECT_EQ(a.uniform(0.3, 0.3), 0.3);
  b.uniform01();
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(SeverityTest, Examples) {
  EXPECT_EQ(severity_score(0, 0, 0, 3.0, 2.0, 7.0).value, 0.0);
  EXPECT_NEAR(severity_score(0.05, 0.10, 0.10).value, 0.25, 1e-15);
  EXPECT_THROW(severity_score(-0.1, 0, 0), SpectralError);
  EXPECT_THROW(severity_score(0, 0, 0, 1, -1, 1), SpectralError);
}

TEST(SeverityTest, Linearity) {
  RandomStream rng(31);
  for (int i = 0; i < 100; ++i) {
    const double m = rng.uniform01(), f = rng.uniform01(), c = rng.uniform01();
    const double a = rng.uniform(0, 2), b = rng.uniform(0, 2), g = rng.uniform(0, 2);
    const double base = severity_score(m, f, c, a, b, g).value;
    // Scaling by two is exact in binary floating point.
    EXPECT_EQ(severity_score(m, f, c, 2 * a, 2 * b, 2 * g).value, 2 * base);
    EXPECT_EQ(severity_score(2 * m, 2 * f, 2 * c, a, b, g).value, 2 * base);
    EXPECT_EQ(severity_score(m, f, c, a, b, g).value, a * m + b * f + g * c);
  }
}

TEST(ObscuraTest, DefaultParamsGiveQuarterSeverity) {
  const ObscuraParams defaults;
  const auto img = testing::synthetic_image(16, 16, 1);
  for (const char* id : {"a", "b", "c", "d"}) {
    const auto r = obscura_transform(img, defaults, TransformSeed{}, id);
    EXPECT_EQ(r.draw.kernel_len, 3);
    EXPECT_NEAR(r.severity.value, 0.25, 1e-12);
  }
}

TEST(ObscuraTest, RealizedFogNormalization) {
  ObscuraParams p;
  p.normalization.fog_source = FogMagnitude::Realized;
  const auto d = draw_obscura(p, TransformSeed{}, "x");
  EXPECT_NEAR(obscura_severity(p, d).value, 0.05 + d.fog_coeff + 0.1, 1e-12);
  EXPECT_LT(obscura_severity(p, d).value, 0.25 + 1e-12);
}

TEST(ObscuraTest, DrawsStayInRange) {
  ObscuraParams p;
  p.blur_limit = 9;
  p.fog_coeff = 0.4;
  p.cb_limit = 0.2;
  std::set<int> kernels;
  for (int i = 0; i < 500; ++i) {
    const auto d = draw_obscura(p, TransformSeed{77}, "img_" + std::to_string(i));
    kernels.insert(d.kernel_len);
    EXPECT_EQ(d.kernel_len % 2, 1);
    EXPECT_GE(d.angle_deg, 0.0);
    EXPECT_LT(d.angle_deg, 180.0);
    EXPECT_GE(d.fog_coeff, 0.2);
    EXPECT_LE(d.fog_coeff, 0.4);
    EXPECT_GE(d.contrast_factor, 0.8);
    EXPECT_LE(d.contrast_factor, 1.2);
    EXPECT_GE(d.brightness_shift, -0.2);
    EXPECT_LE(d.brightness_shift, 0.2);
  }
  EXPECT_EQ(kernels, (std::set<int>{3, 5, 7, 9}));
}

TEST(ObscuraTest, ZeroMagnitudesOnConstantImageAreIdentity) {
  ObscuraParams p;
  p.fog_coeff = 0.0;
  p.cb_limit = 0.0;
  const ImageBuffer flat(12, 9, Rgb{40, 90, 200});
  EXPECT_EQ(obscura_transform(flat, p, TransformSeed{42}, "flat").image, flat);
}

TEST(ObscuraTest, SameSeedIsBitIdentical) {
  const auto img = testing::synthetic_image(32, 24, 4);
  const ObscuraParams p{.blur_limit = 7, .fog_coeff = 0.3, .cb_limit = 0.2};
  const auto a = obscura_transform(img, p, TransformSeed{42}, "img_007");
  const auto b = obscura_transform(img, p, TransformSeed{42}, "img_007");
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.severity.value, b.severity.value);
  const auto c = obscura_transform(img, p, TransformSeed{43}, "img_007");
  EXPECT_NE(a.image, c.image);
}

TEST(ObscuraTest, PipelineOrderIsBlurFogContrast) {
  const auto img = testing::synthetic_image(20, 20, 12);
  const ObscuraParams p{.blur_limit = 5, .fog_coeff = 0.3, .cb_limit = 0.15};
  const auto r = obscura_transform(img, p, TransformSeed{3}, "order");
  const auto expected = adjust_contrast_brightness(
      apply_fog(motion_blur(img, r.draw.kernel_len, r.draw.angle_deg), r.draw.fog_coeff),
      r.draw.contrast_factor, r.draw.brightness_shift);
  EXPECT_EQ(r.image, expected);
}

TEST(ObscuraTest, ParamValidation) {
  const ImageBuffer img(2, 2);
  EXPECT_THROW(obscura_transform(img, ObscuraParams{.blur_limit = 4}, {}, "x"), SpectralError);
  EXPECT_THROW(obscura_transform(img, ObscuraParams{.fog_coeff = 1.5}, {}, "x"), SpectralError);
  EXPECT_THROW(obscura_transform(img, ObscuraParams{.cb_limit = -0.1}, {}, "x"), SpectralError);
  EXPECT_THROW(obscura_transform(img, ObscuraParams{.alpha = -1.0}, {}, "x"), SpectralError);
}

}  // namespace
}  // namespace dronespec::spectral
