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

#include <cmath>

#include <gtest/gtest.h>

#include "dronespec/spectral.hpp"
#include "fixtures.hpp"

namespace dronespec::spectral {
namespace {

// Nearest integer to num/den for non-negative num, ties upward.
int nearest(long long num, long long den) {
  const long long q = num / den;
  const long long r = num - q * den;
  return static_cast<int>(2 * r >= den ? q + 1 : q);
}

std::uint8_t clamp_round(double v) {
  const double r = std::floor(v + 0.5);
  return static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, r)));
}

GrayImage gray_from(int w, int h, std::vector<std::uint8_t> px) { return GrayImage(w, h, std::move(px)); }

TEST(GrayscaleTest, Examples) {
  ImageBuffer img(3, 1);
  img.at(0, 0) = {255, 255, 255};
  img.at(1, 0) = {255, 0, 0};
  img.at(2, 0) = {0, 0, 0};
  const auto g = to_grayscale(img);
  EXPECT_EQ(g.at(0, 0), 255);
  EXPECT_EQ(g.at(1, 0), 76);
  EXPECT_EQ(g.at(2, 0), 0);
}

TEST(GrayscaleTest, EqualChannelsAreFixedPoints) {
  for (int x = 0; x < 256; ++x) {
    ImageBuffer img(1, 1, Rgb{static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(x)});
    EXPECT_EQ(to_grayscale(img).at(0, 0), x);
  }
}

TEST(GrayscaleTest, MatchesRationalOracle) {
  RandomStream rng(11);
  ImageBuffer img(64, 64);
  for (auto& p : img.pixels()) {
    p = {static_cast<std::uint8_t>(rng.uniform_int(0, 255)), static_cast<std::uint8_t>(rng.uniform_int(0, 255)),
         static_cast<std::uint8_t>(rng.uniform_int(0, 255))};
  }
  const auto g = to_grayscale(img);
  for (std::size_t i = 0; i < img.size(); ++i) {
    const auto p = img.pixels()[i];
    EXPECT_EQ(g.pixels()[i], nearest(299LL * p.r + 587LL * p.g + 114LL * p.b, 1000));
  }
}

TEST(GrayscaleTest, IdempotentAfterExpansion) {
  const auto img = testing::synthetic_image(20, 10, 5);
  const auto g = to_grayscale(img);
  EXPECT_EQ(to_grayscale(expand_gray(g)), g);
}

TEST(NormalizeContrastTest, Examples) {
  const auto full = gray_from(2, 1, {0, 255});
  EXPECT_EQ(normalize_contrast(full), full);
  EXPECT_EQ(normalize_contrast(gray_from(2, 2, {9, 9, 9, 9})), gray_from(2, 2, {0, 0, 0, 0}));
  EXPECT_EQ(normalize_contrast(gray_from(2, 1, {50, 150})), gray_from(2, 1, {0, 255}));
}

TEST(NormalizeContrastTest, MatchesFormula) {
  const auto g = gray_from(5, 1, {50, 75, 100, 125, 150});
  const auto n = normalize_contrast(g);
  for (int x = 0; x < 5; ++x) EXPECT_EQ(n.at(x, 0), nearest((g.at(x, 0) - 50LL) * 255, 100));
  EXPECT_EQ(n.at(1, 0), 64);  // 63.75
  EXPECT_EQ(n.at(2, 0), 128);  // 127.5 rounds away from zero
}

TEST(ColormapTest, IndexingAndIdentity) {
  const auto g = gray_from(3, 1, {0, 128, 255});
  const auto c = apply_colormap(g, inferno_lut());
  EXPECT_EQ(c.at(0, 0), inferno_lut()[0]);
  EXPECT_EQ(c.at(1, 0), inferno_lut()[128]);
  EXPECT_EQ(c.at(2, 0), inferno_lut()[255]);
  EXPECT_EQ(apply_colormap(g, ColorMapLUT::identity()), expand_gray(g));
}

TEST(ColormapTest, InfernoEndpointsMatchReference) {
  // Reference endpoints of the inferno map scaled to 8 bits.
  EXPECT_EQ(inferno_lut()[0], (Rgb{0, 0, 4}));
  EXPECT_EQ(inferno_lut()[255], (Rgb{252, 255, 164}));
}

TEST(ColormapTest, LumaOrdering) {
  const auto& lut = inferno_lut();
  EXPECT_LT(luma(lut[0]), luma(lut[128]));
  EXPECT_LT(luma(lut[128]), luma(lut[255]));
  for (int i = 1; i < 256; ++i) {
    EXPECT_LT(luma(lut[static_cast<std::uint8_t>(i - 1)]), luma(lut[static_cast<std::uint8_t>(i)])) << i;
  }
}

TEST(ColormapTest, RejectsMisorderedTable) {
  std::array<Rgb, 256> entries{};
  for (int i = 0; i < 256; ++i) entries[static_cast<std::size_t>(i)] = Rgb{static_cast<std::uint8_t>(255 - i), 0, 0};
  EXPECT_THROW(ColorMapLUT{entries}, SpectralError);
}

TEST(LutAssetTest, ShippedAssetMatchesEmbeddedTable) {
  const auto asset = load_lut_asset(std::filesystem::path(DRONESPEC_DATA_DIR) / "inferno_lut.txt");
  EXPECT_EQ(asset.entries(), inferno_lut().entries());
  const auto text = testing::read_bytes(std::filesystem::path(DRONESPEC_DATA_DIR) / "inferno_lut.txt");
  EXPECT_NE(text.find(inferno_provenance()), std::string::npos);
  char crc[16];
  std::snprintf(crc, sizeof(crc), "crc32=%08x", inferno_checksum());
  EXPECT_NE(text.find(crc), std::string::npos);
}

TEST(LutAssetTest, FormatParseRoundTrip) {
  const auto text = format_lut_asset(inferno_lut(), inferno_provenance());
  EXPECT_EQ(parse_lut_asset(text).entries(), inferno_lut().entries());
}

TEST(LutAssetTest, CorruptionIsDetected) {
  auto text = format_lut_asset(inferno_lut(), inferno_provenance());
  const auto pos = text.find("\n200 ");
  ASSERT_NE(pos, std::string::npos);
  text[pos + 5] = text[pos + 5] == '1' ? '2' : '1';
  try {
    parse_lut_asset(text);
    FAIL();
  } catch (const SpectralError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LutAssetInvalid);
  }
  EXPECT_THROW(parse_lut_asset("# no checksum\n0 0 0 0\n"), SpectralError);
}

TEST(ThermalTest, BlackInputMapsToFirstEntry) {
  const auto out = thermal_transform(ImageBuffer(4, 3));
  for (const auto& p : out.pixels()) EXPECT_EQ(p, inferno_lut()[0]);
}

TEST(ThermalTest, RangeEndpoints) {
  ImageBuffer img(3, 1);
  img.at(0, 0) = {10, 10, 10};
  img.at(1, 0) = {90, 90, 90};
  img.at(2, 0) = {200, 200, 200};
  const auto out = thermal_transform(img);
  EXPECT_EQ(out.at(0, 0), inferno_lut()[0]);
  EXPECT_EQ(out.at(2, 0), inferno_lut()[255]);
}

TEST(ThermalTest, ComposesIndependentStageOracles) {
  const auto img = testing::synthetic_image(4, 4, 99);
  std::vector<int> gray;
  for (const auto& p : img.pixels()) gray.push_back(nearest(299LL * p.r + 587LL * p.g + 114LL * p.b, 1000));
  const int lo = *std::min_element(gray.begin(), gray.end());
  const int hi = *std::max_element(gray.begin(), gray.end());
  ASSERT_LT(lo, hi);
  const auto out = thermal_transform(img);
  for (std::size_t i = 0; i < gray.size(); ++i) {
    const int level = nearest((gray[i] - lo) * 255LL, hi - lo);
    EXPECT_EQ(out.pixels()[i], inferno_lut()[static_cast<std::uint8_t>(level)]);
  }
}

TEST(LinearScaleTest, Examples) {
  const auto g = gray_from(3, 1, {0, 100, 200});
  EXPECT_EQ(linear_scale_abs(g, 1.0, 0.0), g);
  const auto s = linear_scale_abs(g, 1.2, 30.0);
  EXPECT_EQ(s.at(0, 0), 30);
  EXPECT_EQ(s.at(1, 0), 150);
  EXPECT_EQ(s.at(2, 0), 255);
  EXPECT_THROW(linear_scale_abs(g, 0.0, 0.0), SpectralError);
}

TEST(LinearScaleTest, MatchesArithmeticOracle) {
  std::vector<std::uint8_t> all(256);
  for (int i = 0; i < 256; ++i) all[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  const auto g = gray_from(256, 1, all);
  for (double gain : {0.5, 1.2, 2.0}) {
    for (double bias : {0.0, 30.0, 77.0}) {
      const auto s = linear_scale_abs(g, gain, bias);
      for (int x = 0; x < 256; ++x) EXPECT_EQ(s.at(x, 0), clamp_round(gain * x + bias)) << gain << " " << bias << " " << x;
    }
  }
}

TEST(NightVisionTest, Examples) {
  const auto black = night_vision_transform(ImageBuffer(2, 2), NightVisionParams{.bias = 0.0});
  for (const auto& p : black.pixels()) EXPECT_EQ(p, (Rgb{0, 0, 0}));

  ImageBuffer img(1, 1, Rgb{100, 100, 100});
  EXPECT_EQ(night_vision_transform(img, {}).at(0, 0), (Rgb{15, 150, 15}));
}

TEST(NightVisionTest, GreenDominates) {
  const auto out = night_vision_transform(testing::synthetic_image(32, 32, 4), {});
  for (const auto& p : out.pixels()) {
    EXPECT_GE(p.g, p.r);
    EXPECT_GE(p.g, p.b);
  }
}

TEST(NightVisionTest, ParamValidation) {
  EXPECT_THROW(night_vision_transform(ImageBuffer(1, 1), NightVisionParams{.gain = 0.0}), SpectralError);
  EXPECT_THROW(night_vision_transform(ImageBuffer(1, 1), NightVisionParams{.weight_r = 1.1}), SpectralError);
}

TEST(MotionBlurTest, HandConvolution) {
  ImageBuffer img(5, 1);
  img.at(2, 0) = {255, 255, 255};
  const auto out = motion_blur(img, 3, 0.0);
  const std::uint8_t expected[] = {0, 85, 85, 85, 0};
  for (int x = 0; x < 5; ++x) EXPECT_EQ(out.at(x, 0).g, expected[x]) << x;
}

TEST(MotionBlurTest, IdentityAndConstant) {
  const auto img = testing::synthetic_image(9, 7, 2);
  EXPECT_EQ(motion_blur(img, 1, 37.0), img);
  const ImageBuffer flat(9, 7, Rgb{10, 20, 30});
  for (int k : {3, 5, 9}) {
    for (double a : {0.0, 45.0, 90.0, 133.0}) EXPECT_EQ(motion_blur(flat, k, a), flat);
  }
  EXPECT_THROW(motion_blur(img, 4, 0.0), SpectralError);
  EXPECT_THROW(motion_blur(img, 0, 0.0), SpectralError);
}

TEST(MotionBlurTest, AxisAlignedMatchesBoxFilter) {
  const auto img = testing::synthetic_image(16, 12, 3);
  const auto horiz = motion_blur(img, 5, 0.0);
  const auto vert = motion_blur(img, 5, 90.0);
  for (int y = 0; y < 12; ++y) {
    for (int x = 0; x < 16; ++x) {
      double sh = 0, sv = 0;
      for (int t = -2; t <= 2; ++t) {
        sh += img.at(std::clamp(x + t, 0, 15), y).r;
        sv += img.at(x, std::clamp(y + t, 0, 11)).r;
      }
      EXPECT_EQ(horiz.at(x, y).r, clamp_round(sh / 5.0));
      EXPECT_EQ(vert.at(x, y).r, clamp_round(sv / 5.0));
    }
  }
}

TEST(MotionBlurTest, TapsFollowTheLine) {
  EXPECT_EQ(motion_blur_taps(3, 0.0), (std::vector<std::pair<int, int>>{{-1, 0}, {0, 0}, {1, 0}}));
  EXPECT_EQ(motion_blur_taps(3, 90.0), (std::vector<std::pair<int, int>>{{0, -1}, {0, 0}, {0, 1}}));
  EXPECT_EQ(motion_blur_taps(3, 45.0), (std::vector<std::pair<int, int>>{{-1, 1}, {0, 0}, {1, -1}}));
}

TEST(MotionBlurTest, MeanPreservedWithinOne) {
  RandomStream rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = testing::synthetic_image(64, 64, rng.next_u64());
    const int k = 2 * static_cast<int>(rng.uniform_int(1, 3)) + 1;
    const auto out = motion_blur(img, k, rng.uniform(0.0, 180.0));
    double a = 0, b = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
      a += img.pixels()[i].g;
      b += out.pixels()[i].g;
    }
    EXPECT_NEAR(a / img.size(), b / img.size(), 1.0);
  }
}

TEST(FogTest, Examples) {
  const auto img = testing::synthetic_image(8, 8, 6);
  EXPECT_EQ(apply_fog(img, 0.0), img);
  const auto white = apply_fog(img, 1.0);
  for (const auto& p : white.pixels()) EXPECT_EQ(p, (Rgb{255, 255, 255}));
  EXPECT_EQ(apply_fog(ImageBuffer(1, 1, Rgb{100, 100, 100}), 0.1).at(0, 0), (Rgb{116, 116, 116}));
  EXPECT_THROW(apply_fog(img, 1.01), SpectralError);
}

TEST(FogTest, Monotone) {
  const auto img = testing::synthetic_image(16, 16, 8);
  for (int step = 0; step < 20; ++step) {
    const auto lo = apply_fog(img, step / 20.0);
    const auto hi = apply_fog(img, (step + 1) / 20.0);
    for (std::size_t i = 0; i < img.size(); ++i) {
      EXPECT_GE(hi.pixels()[i].r, lo.pixels()[i].r);
      EXPECT_GE(hi.pixels()[i].g, lo.pixels()[i].g);
      EXPECT_GE(hi.pixels()[i].b, lo.pixels()[i].b);
    }
  }
}

TEST(ContrastBrightnessTest, Examples) {
  const auto img = testing::synthetic_image(8, 8, 9);
  EXPECT_EQ(adjust_contrast_brightness(img, 1.0, 0.0), img);
  EXPECT_EQ(adjust_contrast_brightness(ImageBuffer(1, 1, Rgb{128, 128, 128}), 0.9, 0.0).at(0, 0),
            (Rgb{128, 128, 128}));
  EXPECT_EQ(adjust_contrast_brightness(ImageBuffer(1, 1, Rgb{200, 200, 200}), 1.1, 0.1).at(0, 0),
            (Rgb{233, 233, 233}));
  EXPECT_THROW(adjust_contrast_brightness(img, 0.0, 0.0), SpectralError);
}

TEST(TransformsTest, DimensionsPreserved) {
  const auto img = testing::synthetic_image(13, 7, 10);
  auto same = [](const auto& a, const auto& b) { return a.width() == b.width() && a.height() == b.height(); };
  EXPECT_TRUE(same(img, to_grayscale(img)));
  EXPECT_TRUE(same(img, thermal_transform(img)));
  EXPECT_TRUE(same(img, night_vision_transform(img, {})));
  EXPECT_TRUE(same(img, motion_blur(img, 5, 30.0)));
  EXPECT_TRUE(same(img, apply_fog(img, 0.3)));
  EXPECT_TRUE(same(img, adjust_contrast_brightness(img, 0.9, 0.05)));
}

}  // namespace
}  // namespace dronespec::spectral
