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
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "dronespec/spectral.hpp"

namespace dronespec::spectral {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::NegativeInput: return "NegativeInput";
    case ErrorKind::LutAssetInvalid: return "LutAssetInvalid";
  }
  return "Unknown";
}

SpectralError::SpectralError(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

namespace {

constexpr std::array<Rgb, 256> kInferno = {{
#include "inferno_lut.inc"
}};

constexpr std::string_view kInfernoProvenance =
    "matplotlib-3.10.9:_cm_listed._inferno_data*255,round-half-away";
constexpr std::uint32_t kInfernoCrc = 0xf70b4e67u;

std::uint32_t crc32_of(std::string_view body) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size())));
}

std::string format_body(const ColorMapLUT& lut) {
  std::string body;
  char line[32];
  for (int i = 0; i < 256; ++i) {
    const Rgb p = lut[static_cast<std::uint8_t>(i)];
    std::snprintf(line, sizeof(line), "%d %d %d %d\n", i, p.r, p.g, p.b);
    body += line;
  }
  return body;
}

[[noreturn]] void bad_asset(const std::string& why) {
  throw SpectralError(ErrorKind::LutAssetInvalid, why);
}

}  // namespace

ColorMapLUT::ColorMapLUT(const std::array<Rgb, 256>& entries) : entries_(entries) {
  const double lo = luma(entries_[0]);
  const double hi = luma(entries_[255]);
  for (const auto& e : entries_) {
    const double l = luma(e);
    if (l < lo || l > hi) {
      throw SpectralError(ErrorKind::InvalidParameter,
                          "LUT endpoints must hold the minimum and maximum luma");
    }
  }
}

ColorMapLUT ColorMapLUT::identity() {
  std::array<Rgb, 256> e;
  for (int i = 0; i < 256; ++i) {
    const auto v = static_cast<std::uint8_t>(i);
    e[static_cast<std::size_t>(i)] = Rgb{v, v, v};
  }
  return ColorMapLUT(e);
}

const ColorMapLUT& inferno_lut() {
  static const ColorMapLUT lut(kInferno);
  return lut;
}

std::string_view inferno_provenance() { return kInfernoProvenance; }
std::uint32_t inferno_checksum() { return kInfernoCrc; }

std::string format_lut_asset(const ColorMapLUT& lut, std::string_view provenance) {
  const std::string body = format_body(lut);
  char crc[16];
  std::snprintf(crc, sizeof(crc), "%08x", crc32_of(body));
  return "# inferno provenance=" + std::string(provenance) + " crc32=" + crc + "\n" + body;
}

ColorMapLUT parse_lut_asset(std::string_view text) {
  const auto eol = text.find('\n');
  if (eol == std::string_view::npos || text.empty() || text[0] != '#') bad_asset("missing header line");
  const std::string_view header = text.substr(0, eol);
  const std::string_view body = text.substr(eol + 1);

  const auto key = header.find("crc32=");
  if (key == std::string_view::npos) bad_asset("header lacks crc32=");
  std::uint32_t declared = 0;
  const char* first = header.data() + key + 6;
  auto [ptr, ec] = std::from_chars(first, header.data() + header.size(), declared, 16);
  if (ec != std::errc{} || ptr == first) bad_asset("unparseable crc32 value");
  if (crc32_of(body) != declared) bad_asset("checksum mismatch");

  std::array<Rgb, 256> entries{};
  std::istringstream in{std::string(body)};
  int count = 0;
  int index, r, g, b;
  while (in >> index >> r >> g >> b) {
    if (index != count || r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) {
      bad_asset("malformed entry at index " + std::to_string(count));
    }
    entries[static_cast<std::size_t>(index)] =
        Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
    if (++count > 256) bad_asset("more than 256 entries");
  }
  if (count != 256) bad_asset("expected 256 entries, found " + std::to_string(count));
  return ColorMapLUT(entries);
}

ColorMapLUT load_lut_asset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad_asset("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_lut_asset(buf.str());
}

}  // namespace dronespec::spectral
