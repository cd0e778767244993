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
#include <cctype>
#include <fstream>
#include <set>

#include "dronespec/corpus.hpp"

namespace dronespec::corpus {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_image_file(const fs::path& p) {
  const auto ext = lower(p.extension().string());
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

const SplitPaths& split_paths(const DatasetManifest& manifest, std::string_view split) {
  auto it = manifest.splits.find(std::string(split));
  if (it == manifest.splits.end()) {
    throw CorpusError(ErrorKind::SplitMissing, "split '" + std::string(split) + "' not declared",
                      manifest.source.string());
  }
  return it->second;
}

// Sorted file listing; directory enumeration order is unspecified.
std::vector<fs::path> sorted_files(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (fs::directory_iterator it(dir, ec), end; !ec && it != end; it.increment(ec)) {
    if (it->is_regular_file()) files.push_back(it->path());
  }
  if (ec) throw CorpusError(ErrorKind::IoFailure, "cannot list directory: " + ec.message(), dir.string());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

std::vector<ImageEntry> list_split_images(const DatasetManifest& manifest, std::string_view split) {
  const auto& paths = split_paths(manifest, split);
  if (!fs::is_directory(paths.images)) {
    throw CorpusError(ErrorKind::SplitMissing,
                      "image directory of split '" + std::string(split) + "' does not exist",
                      paths.images.string());
  }
  std::vector<ImageEntry> entries;
  for (const auto& file : sorted_files(paths.images)) {
    if (!is_image_file(file)) continue;
    auto id = file.stem().string();
    entries.push_back(ImageEntry{id, file, paths.labels / (id + ".txt")});
  }
  std::sort(entries.begin(), entries.end(),
            [](const ImageEntry& a, const ImageEntry& b) { return a.image_id < b.image_id; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].image_id == entries[i - 1].image_id) {
      throw CorpusError(ErrorKind::DuplicateImageId, "two images share one id",
                        entries[i].image_path.string(), 0, entries[i].image_id);
    }
  }
  return entries;
}

ValidationReport validate_dataset(const DatasetManifest& manifest) {
  ValidationReport report;
  report.per_class_counts.assign(manifest.class_table.size(), 0);
  if (manifest.splits.empty()) {
    throw CorpusError(ErrorKind::SplitMissing, "manifest declares no splits", manifest.source.string());
  }

  for (const auto& [split, paths] : manifest.splits) {
    if (!fs::is_directory(paths.images)) {
      throw CorpusError(ErrorKind::SplitMissing,
                        "image directory of split '" + split + "' does not exist",
                        paths.images.string());
    }
    std::vector<fs::path> images;
    std::set<std::string> ids;
    for (const auto& file : sorted_files(paths.images)) {
      if (!is_image_file(file)) continue;
      if (!ids.insert(file.stem().string()).second) {
        report.violations.push_back({file.string(), 0, "duplicate image id '" + file.stem().string() + "'"});
        continue;
      }
      images.push_back(file);
    }
    report.per_split_images[split] = static_cast<std::int64_t>(images.size());
    report.image_count += static_cast<std::int64_t>(images.size());

    for (const auto& image : images) {
      const auto label = paths.labels / (image.stem().string() + ".txt");
      std::ifstream in(label, std::ios::binary);
      if (!in) {
        report.violations.push_back({label.string(), 0, "missing label file for image '" + image.stem().string() + "'"});
        continue;
      }
      std::string line;
      int line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t\v\f") == std::string::npos) continue;
        try {
          auto rec = parse_annotation_line(line, manifest.class_table, line_no);
          ++report.per_class_counts[static_cast<std::size_t>(rec.class_id)];
          ++report.label_count;
        } catch (const CorpusError& e) {
          report.violations.push_back({label.string(), line_no, e.what()});
        }
      }
    }

    // Label files without an image are reported too; they usually indicate a
    // renamed or deleted image.
    if (fs::is_directory(paths.labels)) {
      for (const auto& file : sorted_files(paths.labels)) {
        if (file.extension() != ".txt") continue;
        if (!ids.count(file.stem().string())) {
          report.violations.push_back({file.string(), 0, "label file has no matching image"});
        }
      }
    }
  }
  return report;
}

std::vector<SplitItem> load_split(const DatasetManifest& manifest, std::string_view split) {
  std::vector<SplitItem> items;
  for (auto& entry : list_split_images(manifest, split)) {
    if (!fs::is_regular_file(entry.label_path)) {
      throw CorpusError(ErrorKind::LabelMissing, "no label file for image",
                        entry.label_path.string(), 0, entry.image_id);
    }
    auto records = read_annotation_file(entry.label_path, manifest.class_table);
    items.push_back(SplitItem{std::move(entry.image_id), std::move(entry.image_path),
                              std::move(entry.label_path), std::move(records)});
  }
  return items;
}

std::map<std::string, std::vector<PredRecord>> load_prediction_dir(const fs::path& dir,
                                                                   const ClassTable& classes) {
  if (!fs::is_directory(dir)) {
    throw CorpusError(ErrorKind::IoFailure, "prediction directory does not exist", dir.string());
  }
  std::map<std::string, std::vector<PredRecord>> out;
  for (const auto& file : sorted_files(dir)) {
    if (file.extension() != ".txt") continue;
    out[file.stem().string()] = read_prediction_file(file, classes);
  }
  return out;
}

}  // namespace dronespec::corpus
