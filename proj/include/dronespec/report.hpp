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

/// @file report.hpp
/// @brief Timing aggregation, cross-modality comparison tables and annotated
/// detection renders.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dronespec/corpus.hpp"
#include "dronespec/eval.hpp"
#include "dronespec/image.hpp"

namespace dronespec::report {

enum class ErrorKind {
  EmptyInput,
  DuplicateModalityName,
  NegativeDuration,
  TimingUnreadable,
};

std::string_view error_name(ErrorKind kind);

class ReportError : public std::runtime_error {
 public:
  ReportError(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct TimingRecord {
  std::string image_id;
  double preprocess_ms = 0.0;
  double inference_ms = 0.0;
  double postprocess_ms = 0.0;
};

/// Per-stage means; total is the sum of the means (before any display rounding).
struct TimingSummary {
  std::size_t count = 0;
  double preprocess_ms = 0.0;
  double inference_ms = 0.0;
  double postprocess_ms = 0.0;
  double total_ms = 0.0;
};

TimingSummary aggregate_timing(const std::vector<TimingRecord>& records);

/// Line-delimited JSON: one `{"image_id", "preprocess_ms", "inference_ms",
/// "postprocess_ms"}` object per line. Blank lines and lines starting with '#'
/// (a header comment) are skipped.
std::vector<TimingRecord> parse_timing_lines(std::string_view text);
std::vector<TimingRecord> load_timing_file(const std::filesystem::path& path);
std::string format_timing_line(const TimingRecord& record);

struct DetectionScores {
  double map50 = 0.0;
  double map50_95 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static DetectionScores from_summary(const eval::EvalSummary& s);
  static DetectionScores from_headline(const eval::SummaryHeadline& h);
};

struct ModalityResult {
  std::string modality;
  DetectionScores scores;
  TimingSummary timing;
  std::optional<double> training_time_h;
};

struct ComparisonRow {
  int rank = 0;
  ModalityResult result;
};

/// Rows ranked by mAP@50 descending, then mAP@50-95 descending; remaining
/// ties fall back to modality name so the order never depends on input order.
struct ComparisonTable {
  std::vector<ComparisonRow> rows;
};

ComparisonTable compose_comparison(std::vector<ModalityResult> results);

enum class Format { Markdown, Csv, Json };

/// "markdown"/"md", "csv", "json"; throws std::invalid_argument otherwise.
Format parse_format(std::string_view name);

/// Columns: modality, preprocess, inference, postprocess, total, map50,
/// map50_95, precision, recall, f1, training_time_h. Times print with one
/// decimal and scores with three in markdown/csv; json carries full values.
std::string emit(const ComparisonTable& table, Format format);

// ---------------------------------------------------------------------------
// Rendering

/// Fixed per-class colors; class ids beyond the palette wrap around.
Rgb class_color(int class_id);

/// Pixel rectangle (inclusive) of a normalized box on a width x height image.
struct PixelRect {
  int x0, y0, x1, y1;
};
PixelRect to_pixel_rect(const corpus::NormBox& box, int width, int height);

/// Draws predictions with confidence >= conf_threshold as 2-pixel rectangles
/// with a "<class> <conf>" tag at the box's top-left corner.
ImageBuffer render_detections(const ImageBuffer& img, const std::vector<corpus::PredRecord>& preds,
                              const corpus::ClassTable& classes, double conf_threshold);

}  // namespace dronespec::report
