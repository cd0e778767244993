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

/// @file eval.hpp
/// @brief Detection metrics: IoU matching, PR curves, AP, mAP@50 and
/// mAP@50-95, macro precision/recall/F1 and the confusion matrix.
///
/// Predictions are taken as post-NMS; nothing here deduplicates them.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dronespec/corpus.hpp"

namespace dronespec::eval {

using corpus::ClassTable;
using corpus::GtRecord;
using corpus::NormBox;
using corpus::PredRecord;

enum class ErrorKind {
  UnknownImageId,
  ClassIdOutOfRange,
  InvalidConfig,
  InstanceTooLarge,
  SummaryUnreadable,
};

std::string_view error_name(ErrorKind kind);

class EvalError : public std::runtime_error {
 public:
  EvalError(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Ground truth / predictions keyed by image id.
using GtSet = std::map<std::string, std::vector<GtRecord>>;
using PredSet = std::map<std::string, std::vector<PredRecord>>;

double iou(const NormBox& a, const NormBox& b);

// ---------------------------------------------------------------------------
// Counts and P/R/F1

struct EvalCounts {
  std::int64_t true_positives = 0;
  std::int64_t false_positives = 0;
  std::int64_t false_negatives = 0;
};

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Harmonic mean of precision and recall; 0 when both are 0.
double f1_score(double precision, double recall);

/// Zero denominators yield 0 for the affected ratio.
PrecisionRecallF1 precision_recall_f1(const EvalCounts& counts);

// ---------------------------------------------------------------------------
// Matching

struct MatchResult {
  /// Indexed like the input predictions.
  std::vector<bool> is_true_positive;
  /// Ground-truth index matched by each prediction, or -1.
  std::vector<int> matched_gt;
  std::int64_t false_negatives = 0;

  EvalCounts counts() const;
};

/// Greedy one-to-one matching for one image and one class. Predictions are
/// visited by descending confidence (ties in input order); each takes the
/// still-unmatched ground truth with the highest IoU >= `iou_threshold`
/// (ties to the lower ground-truth index).
MatchResult match_detections(std::span<const PredRecord> preds, std::span<const GtRecord> gts,
                             double iou_threshold);

// ---------------------------------------------------------------------------
// PR curves and AP

struct ScoredFlag {
  double confidence = 0.0;
  bool true_positive = false;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct PrCurve {
  std::vector<PrPoint> points;
  std::int64_t num_gt = 0;
};

/// Cumulative sweep over descending confidence (stable for ties). num_gt == 0
/// yields an empty curve.
PrCurve pr_curve(std::span<const ScoredFlag> flags, std::int64_t num_gt);

enum class Interpolation {
  Point101,   // mean of the envelope sampled at recall 0.00, 0.01, ..., 1.00
  AllPoints,  // exact area under the monotone envelope
};

double average_precision(const PrCurve& curve, Interpolation mode);

// ---------------------------------------------------------------------------
// Confusion matrix

/// (N+1) x (N+1) counts; row = predicted class, column = true class, index N
/// is background.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t num_classes);

  std::size_t num_classes() const noexcept { return n_; }
  std::size_t background() const noexcept { return n_; }
  std::int64_t& at(std::size_t predicted, std::size_t truth) { return cells_[predicted * (n_ + 1) + truth]; }
  std::int64_t at(std::size_t predicted, std::size_t truth) const { return cells_[predicted * (n_ + 1) + truth]; }

  std::int64_t column_sum(std::size_t truth) const;
  /// Each row divided by its sum (all-zero rows stay zero).
  std::vector<std::vector<double>> row_normalized() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::int64_t> cells_;
};

/// Adds one image to `cm`. Predictions below `cm_conf` are dropped; pairs of
/// any classes with IoU >= `cm_iou` are matched greedily by descending IoU,
/// one-to-one.
void accumulate_confusion(ConfusionMatrix& cm, std::span<const PredRecord> preds,
                          std::span<const GtRecord> gts, double cm_conf, double cm_iou);

ConfusionMatrix confusion_matrix(const GtSet& gts, const PredSet& preds, const ClassTable& classes,
                                 double cm_conf = 0.25, double cm_iou = 0.45);

// ---------------------------------------------------------------------------
// Split evaluation

struct MatchConfig {
  /// Strictly increasing in (0, 1]; must contain 0.50.
  std::vector<double> iou_thresholds = default_thresholds();
  double confidence_floor = 0.001;
  Interpolation interpolation = Interpolation::Point101;
  double cm_conf = 0.25;
  double cm_iou = 0.45;

  /// 0.50, 0.55, ..., 0.95 (T = 10).
  static std::vector<double> default_thresholds();
  void validate() const;
};

struct ClassResult {
  int class_id = 0;
  std::string name;
  std::int64_t num_gt = 0;
  std::int64_t num_pred = 0;
  /// One AP per threshold; empty when the class has no ground truth (such
  /// classes are left out of every mean).
  std::vector<double> ap;
  /// Counts and P/R/F1 at IoU 0.50 and the operating confidence.
  EvalCounts counts;
  PrecisionRecallF1 prf;
  /// PR curve at IoU 0.50, exported for external plotting.
  PrCurve curve50;
};

struct EvalSummary {
  std::vector<double> thresholds;
  Interpolation interpolation = Interpolation::Point101;
  std::vector<ClassResult> per_class;
  double map50 = 0.0;
  double map50_95 = 0.0;
  /// Macro averages over classes with ground truth, at `operating_confidence`.
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double operating_confidence = 0.0;
  ConfusionMatrix confusion{1};
};

/// Full evaluation of one split. Every prediction image id must appear in
/// `gts` (UnknownImageId otherwise); class ids must be inside `classes`.
EvalSummary evaluate_split(const GtSet& gts, const PredSet& preds, const ClassTable& classes,
                           const MatchConfig& config = {});

/// JSON document with fields map50, map50_95, precision, recall, f1,
/// per_class, confusion_matrix (+ row-normalized copy) and run metadata.
std::string summary_to_json(const EvalSummary& summary, bool include_curves = true);

/// Headline metrics read back from a summary document.
struct SummaryHeadline {
  double map50 = 0.0;
  double map50_95 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

SummaryHeadline parse_summary_headline(std::string_view json_text);

}  // namespace dronespec::eval
