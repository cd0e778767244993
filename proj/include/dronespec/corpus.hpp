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

/// @file corpus.hpp
/// @brief YOLO-format dataset model: class tables, normalized boxes, label and
/// prediction files, manifests and split loading.
///
/// Label lines are `<class_id> <cx> <cy> <w> <h>`; prediction lines append a
/// confidence. Coordinates are fractions of the image width/height.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dronespec::corpus {

namespace fs = std::filesystem;

/// Slack allowed on box edges before a coordinate is rejected. Edges that
/// overshoot [0,1] by no more than this are clamped back inside.
inline constexpr double kEdgeTolerance = 1e-6;

enum class ErrorKind {
  WrongTokenCount,
  NonNumericToken,
  ClassIdOutOfRange,
  CoordinateOutOfRange,
  ConfidenceOutOfRange,
  InvalidClassTable,
  ManifestUnreadable,
  SplitMissing,
  LabelMissing,
  DuplicateImageId,
  IoFailure,
};

std::string_view error_name(ErrorKind kind);

/// Every corpus failure. `what()` is prefixed with the error name so it can be
/// surfaced verbatim by the command line.
class CorpusError : public std::runtime_error {
 public:
  CorpusError(ErrorKind kind, std::string detail, std::string file = {},
              int line = 0, std::string token = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  const std::string& token() const noexcept { return token_; }
  const std::string& detail() const noexcept { return detail_; }

  /// Same error with the file path filled in; used when a line parser's error
  /// propagates out of a file reader.
  CorpusError with_file(const std::string& file) const;

 private:
  ErrorKind kind_;
  std::string detail_;
  std::string file_;
  int line_;
  std::string token_;
};

class ClassTable {
 public:
  /// Throws CorpusError(InvalidClassTable) on empty or duplicate names.
  explicit ClassTable(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(int class_id) const { return names_.at(static_cast<std::size_t>(class_id)); }
  bool contains(int class_id) const noexcept {
    return class_id >= 0 && static_cast<std::size_t>(class_id) < names_.size();
  }

  friend bool operator==(const ClassTable&, const ClassTable&) = default;

 private:
  std::vector<std::string> names_;
};

/// The seven military object classes of the KIIT-MiTA drone corpus, in label
/// index order.
ClassTable kiit_mita_classes();

struct NormBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  double left() const noexcept { return cx - w / 2.0; }
  double right() const noexcept { return cx + w / 2.0; }
  double top() const noexcept { return cy - h / 2.0; }
  double bottom() const noexcept { return cy + h / 2.0; }
  double area() const noexcept { return w * h; }

  friend bool operator==(const NormBox&, const NormBox&) = default;
};

/// Checks the NormBox invariants and clamps edges that overshoot by at most
/// kEdgeTolerance. Returns nullopt when the box cannot be represented.
std::optional<NormBox> normalize_box(const NormBox& box);

struct GtRecord {
  int class_id = 0;
  NormBox box;

  friend bool operator==(const GtRecord&, const GtRecord&) = default;
};

struct PredRecord {
  int class_id = 0;
  NormBox box;
  double confidence = 0.0;

  friend bool operator==(const PredRecord&, const PredRecord&) = default;
};

/// Parses one label line. `line_no` is carried into any error.
GtRecord parse_annotation_line(std::string_view text, const ClassTable& classes, int line_no = 0);

/// Parses one prediction line (six tokens, the last a confidence in [0,1]).
PredRecord parse_prediction_line(std::string_view text, const ClassTable& classes, int line_no = 0);

/// Fixed-point text form, six decimals, no trailing newline.
std::string format_annotation_line(const GtRecord& record);
std::string format_prediction_line(const PredRecord& record);

/// One line per record, LF-terminated. An empty list produces an empty file.
void write_annotations(std::span<const GtRecord> records, const fs::path& destination);
void write_predictions(std::span<const PredRecord> records, const fs::path& destination);

/// Reads a whole label file; blank lines are skipped but still counted for
/// line numbers. Errors carry the file path.
std::vector<GtRecord> read_annotation_file(const fs::path& path, const ClassTable& classes);
std::vector<PredRecord> read_prediction_file(const fs::path& path, const ClassTable& classes);

// ---------------------------------------------------------------------------
// Manifests and splits

inline constexpr std::string_view kSplitNames[] = {"train", "val", "test"};

struct SplitPaths {
  fs::path images;
  fs::path labels;
};

struct ImageEntry {
  std::string image_id;
  fs::path image_path;
  fs::path label_path;
};

struct DatasetManifest {
  ClassTable class_table{std::vector<std::string>{"object"}};
  /// Keyed by split name; std::map keeps train/val/test iteration stable.
  std::map<std::string, SplitPaths> splits;
  fs::path source;
};

/// Reads a JSON manifest:
///
///   { "classes": ["Artillery", ...],
///     "splits": { "train": {"images": "train/images", "labels": "train/labels"}, ... } }
///
/// Relative paths resolve against the manifest's directory.
DatasetManifest load_manifest(const fs::path& path);

/// Serializes a manifest back to JSON text (paths written as given).
std::string manifest_to_json(const DatasetManifest& manifest);

/// Lists the images of a split sorted by image id. Images are files with a
/// .png/.jpg/.jpeg extension (any case); the id is the file stem.
/// Throws SplitMissing if the split is not declared or its image directory
/// does not exist, DuplicateImageId if two files share a stem.
std::vector<ImageEntry> list_split_images(const DatasetManifest& manifest, std::string_view split);

struct Violation {
  std::string file;
  int line = 0;
  std::string reason;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::int64_t image_count = 0;
  std::int64_t label_count = 0;
  std::vector<std::int64_t> per_class_counts;
  std::map<std::string, std::int64_t> per_split_images;
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
};

/// Scans every declared split. Collects all violations instead of stopping at
/// the first one.
ValidationReport validate_dataset(const DatasetManifest& manifest);

struct SplitItem {
  std::string image_id;
  fs::path image_path;
  fs::path label_path;
  std::vector<GtRecord> records;
};

/// Loads a split in lexicographic image-id order. A missing label file is a
/// LabelMissing error naming the image id.
std::vector<SplitItem> load_split(const DatasetManifest& manifest, std::string_view split);

/// Per-image prediction files from a directory: `<image_id>.txt`. Files that
/// do not end in .txt are ignored. Result keyed by image id.
std::map<std::string, std::vector<PredRecord>> load_prediction_dir(const fs::path& dir,
                                                                   const ClassTable& classes);

}  // namespace dronespec::corpus
