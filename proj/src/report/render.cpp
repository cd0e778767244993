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
#include <cctype>
#include <cstdio>

#include "dronespec/report.hpp"
#include "dronespec/spectral.hpp"

namespace dronespec::report {

namespace {

// One per KIIT-MiTA class, in class order.
constexpr std::array<Rgb, 7> kPalette = {{
    {230, 25, 75},    // Artillery
    {60, 180, 75},    // Missile
    {255, 225, 25},   // Radar
    {0, 130, 200},    // Multiple Rocket Launcher
    {245, 130, 48},   // Soldier
    {145, 30, 180},   // Tank
    {70, 240, 240},   // Vehicle
}};

constexpr int kLineWidth = 2;
constexpr int kGlyphW = 5;
constexpr int kGlyphH = 7;
constexpr int kAdvance = kGlyphW + 1;
constexpr int kTagPad = 1;
constexpr int kTagH = kGlyphH + 2 * kTagPad;

// 5x7 glyphs, column-major, bit 0 = top row.
struct Glyph {
  char ch;
  std::array<std::uint8_t, 5> cols;
};

constexpr Glyph kFont[] = {
    {' ', {0x00, 0x00, 0x00, 0x00, 0x00}}, {'-', {0x08, 0x08, 0x08, 0x08, 0x08}},
    {'.', {0x00, 0x60, 0x60, 0x00, 0x00}}, {':', {0x00, 0x36, 0x36, 0x00, 0x00}},
    {'_', {0x40, 0x40, 0x40, 0x40, 0x40}}, {'%', {0x23, 0x13, 0x08, 0x64, 0x62}},
    {'0', {0x3E, 0x51, 0x49, 0x45, 0x3E}}, {'1', {0x00, 0x42, 0x7F, 0x40, 0x00}},
    {'2', {0x42, 0x61, 0x51, 0x49, 0x46}}, {'3', {0x21, 0x41, 0x45, 0x4B, 0x31}},
    {'4', {0x18, 0x14, 0x12, 0x7F, 0x10}}, {'5', {0x27, 0x45, 0x45, 0x45, 0x39}},
    {'6', {0x3C, 0x4A, 0x49, 0x49, 0x30}}, {'7', {0x01, 0x71, 0x09, 0x05, 0x03}},
    {'8', {0x36, 0x49, 0x49, 0x49, 0x36}}, {'9', {0x06, 0x49, 0x49, 0x29, 0x1E}},
    {'A', {0x7C, 0x12, 0x11, 0x12, 0x7C}}, {'B', {0x7F, 0x49, 0x49, 0x49, 0x36}},
    {'C', {0x3E, 0x41, 0x41, 0x41, 0x22}}, {'D', {0x7F, 0x41, 0x41, 0x22, 0x1C}},
    {'E', {0x7F, 0x49, 0x49, 0x49, 0x41}}, {'F', {0x7F, 0x09, 0x09, 0x09, 0x01}},
    {'G', {0x3E, 0x41, 0x49, 0x49, 0x7A}}, {'H', {0x7F, 0x08, 0x08, 0x08, 0x7F}},
    {'I', {0x00, 0x41, 0x7F, 0x41, 0x00}}, {'J', {0x20, 0x40, 0x41, 0x3F, 0x01}},
    {'K', {0x7F, 0x08, 0x14, 0x22, 0x41}}, {'L', {0x7F, 0x40, 0x40, 0x40, 0x40}},
    {'M', {0x7F, 0x02, 0x0C, 0x02, 0x7F}}, {'N', {0x7F, 0x04, 0x08, 0x10, 0x7F}},
    {'O', {0x3E, 0x41, 0x41, 0x41, 0x3E}}, {'P', {0x7F, 0x09, 0x09, 0x09, 0x06}},
    {'Q', {0x3E, 0x41, 0x51, 0x21, 0x5E}}, {'R', {0x7F, 0x09, 0x19, 0x29, 0x46}},
    {'S', {0x46, 0x49, 0x49, 0x49, 0x31}}, {'T', {0x01, 0x01, 0x7F, 0x01, 0x01}},
    {'U', {0x3F, 0x40, 0x40, 0x40, 0x3F}}, {'V', {0x1F, 0x20, 0x40, 0x20, 0x1F}},
    {'W', {0x3F, 0x40, 0x38, 0x40, 0x3F}}, {'X', {0x63, 0x14, 0x08, 0x14, 0x63}},
    {'Y', {0x07, 0x08, 0x70, 0x08, 0x07}}, {'Z', {0x61, 0x51, 0x49, 0x45, 0x43}},
};

// Unknown characters render as a hollow box.
constexpr std::array<std::uint8_t, 5> kMissingGlyph = {0x7F, 0x41, 0x41, 0x41, 0x7F};

const std::array<std::uint8_t, 5>& glyph_for(char c) {
  const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& g : kFont) {
    if (g.ch == up) return g.cols;
  }
  return kMissingGlyph;
}

void put(ImageBuffer& img, int x, int y, Rgb color) {
  if (x >= 0 && y >= 0 && x < img.width() && y < img.height()) img.at(x, y) = color;
}

void fill_rect(ImageBuffer& img, int x0, int y0, int x1, int y1, Rgb color) {
  for (int y = std::max(y0, 0); y <= std::min(y1, img.height() - 1); ++y) {
    for (int x = std::max(x0, 0); x <= std::min(x1, img.width() - 1); ++x) img.at(x, y) = color;
  }
}

void draw_frame(ImageBuffer& img, const PixelRect& r, Rgb color) {
  const int t = kLineWidth - 1;
  fill_rect(img, r.x0, r.y0, r.x1, std::min(r.y0 + t, r.y1), color);  // top
  fill_rect(img, r.x0, std::max(r.y1 - t, r.y0), r.x1, r.y1, color);  // bottom
  fill_rect(img, r.x0, r.y0, std::min(r.x0 + t, r.x1), r.y1, color);  // left
  fill_rect(img, std::max(r.x1 - t, r.x0), r.y0, r.x1, r.y1, color);  // right
}

void draw_tag(ImageBuffer& img, int x, int y, const std::string& text, Rgb background) {
  const int width = static_cast<int>(text.size()) * kAdvance + 2 * kTagPad - 1;
  fill_rect(img, x, y, x + width - 1, y + kTagH - 1, background);
  const Rgb ink = spectral::luma(background) > 128.0 ? Rgb{0, 0, 0} : Rgb{255, 255, 255};
  int pen = x + kTagPad;
  for (char c : text) {
    const auto& cols = glyph_for(c);
    for (int col = 0; col < kGlyphW; ++col) {
      for (int row = 0; row < kGlyphH; ++row) {
        if (cols[static_cast<std::size_t>(col)] & (1u << row)) put(img, pen + col, y + kTagPad + row, ink);
      }
    }
    pen += kAdvance;
  }
}

}  // namespace

Rgb class_color(int class_id) {
  const auto n = static_cast<int>(kPalette.size());
  return kPalette[static_cast<std::size_t>(((class_id % n) + n) % n)];
}

PixelRect to_pixel_rect(const corpus::NormBox& box, int width, int height) {
  auto px = [](double v) { return static_cast<int>(round_half_away(v)); };
  PixelRect r;
  r.x0 = std::clamp(px(box.left() * width), 0, width - 1);
  r.y0 = std::clamp(px(box.top() * height), 0, height - 1);
  r.x1 = std::clamp(px(box.right() * width) - 1, r.x0, width - 1);
  r.y1 = std::clamp(px(box.bottom() * height) - 1, r.y0, height - 1);
  return r;
}

ImageBuffer render_detections(const ImageBuffer& img, const std::vector<corpus::PredRecord>& preds,
                              const corpus::ClassTable& classes, double conf_threshold) {
  ImageBuffer out = img;
  for (const auto& p : preds) {
    if (p.confidence < conf_threshold) continue;
    const Rgb color = class_color(p.class_id);
    const PixelRect r = to_pixel_rect(p.box, out.width(), out.height());
    draw_frame(out, r, color);

    char conf[16];
    std::snprintf(conf, sizeof(conf), "%.2f", p.confidence);
    const std::string name = classes.contains(p.class_id) ? classes.name(p.class_id)
                                                          : std::to_string(p.class_id);
    // Above the box when there is room, otherwise just inside its top edge.
    const int tag_y = r.y0 >= kTagH ? r.y0 - kTagH : r.y0;
    draw_tag(out, r.x0, tag_y, name + " " + conf, color);
  }
  return out;
}

}  // namespace dronespec::report
