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

// Shared helpers for the unit and acceptance tests: scratch directories,
// synthetic corpora and whole-tree byte comparison.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dronespec/corpus.hpp"
#include "dronespec/image_io.hpp"
#include "dronespec/seed.hpp"

namespace dronespec::testing {

namespace fs = std::filesystem;

/// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("dronespec_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_bytes(const fs::path& path, const std::string& bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << bytes;
}

/// Relative path -> file bytes for every regular file below `root`.
inline std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = read_bytes(e.path());
  }
  return files;
}

/// Image with smooth gradients plus per-pixel noise so every transform has
/// something to act on.
inline ImageBuffer synthetic_image(int width, int height, std::uint64_t seed) {
  RandomStream rng(seed);
  ImageBuffer img(width, height);
  const auto phase = rng.uniform_int(0, 255);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto noise = rng.uniform_int(0, 31);
      img.at(x, y) = Rgb{static_cast<std::uint8_t>((x * 255 / width + phase) % 256),
                         static_cast<std::uint8_t>((y * 255 / height + noise) % 256),
                         static_cast<std::uint8_t>(((x + y) * 4 + noise * 3) % 256)};
    }
  }
  return img;
}

inline std::vector<corpus::GtRecord> synthetic_labels(RandomStream& rng, int count, int num_classes) {
  std::vector<corpus::GtRecord> out;
  for (int i = 0; i < count; ++i) {
    const double w = rng.uniform(0.05, 0.4);
    const double h = rng.uniform(0.05, 0.4);
    const double cx = rng.uniform(w / 2, 1.0 - w / 2);
    const double cy = rng.uniform(h / 2, 1.0 - h / 2);
    out.push_back({static_cast<int>(rng.uniform_int(0, num_classes - 1)), {cx, cy, w, h}});
  }
  return out;
}

/// Writes `<root>/<split>/{images,labels}` with `count` PNG images named
/// img_000.png ... and a manifest.json declaring the KIIT-MiTA classes.
/// Returns the manifest path.
inline fs::path write_synthetic_corpus(const fs::path& root, int count, std::uint64_t seed,
                                       const std::string& split = "test", int width = 48, int height = 32) {
  const auto images = root / split / "images";
  const auto labels = root / split / "labels";
  fs::create_directories(images);
  fs::create_directories(labels);
  RandomStream rng(seed);
  for (int i = 0; i < count; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "img_%03d", i);
    io::write_png(images / (std::string(name) + ".png"), synthetic_image(width, height, rng.next_u64()));
    const auto recs = synthetic_labels(rng, static_cast<int>(rng.uniform_int(0, 4)), 7);
    corpus::write_annotations(recs, labels / (std::string(name) + ".txt"));
  }
  const auto manifest = root / "manifest.json";
  std::string text = "{\n  \"classes\": [\"Artillery\", \"Missile\", \"Radar\", \"Multiple Rocket Launcher\", "
                     "\"Soldier\", \"Tank\", \"Vehicle\"],\n  \"splits\": {\"" +
                     split + "\": {\"images\": \"" + split + "/images\", \"labels\": \"" + split +
                     "/labels\"}}\n}\n";
  write_bytes(manifest, text);
  return manifest;
}

}  // namespace dronespec::testing
