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

/// @file oracle.hpp
/// @brief Brute-force reference evaluator for small instances.
///
/// Shares no code with the production path in eval.hpp: it has its own IoU,
/// its own matcher, evaluates precision and recall afresh at every cut point
/// and integrates the envelope over distinct recall levels. Always all-points.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dronespec/eval.hpp"
#include "dronespec/seed.hpp"

namespace dronespec::eval::oracle {

inline constexpr std::size_t kMaxPredictions = 32;

struct MicroInstance {
  int num_classes = 1;
  GtSet gts;
  PredSet preds;
};

struct MicroLimits {
  int max_images = 5;
  int max_boxes = 6;  // per image, for ground truth and for predictions
  int max_classes = 3;
};

/// Random scene: predictions are mostly jittered copies of ground-truth boxes
/// (sometimes relabelled) plus a few stray boxes. Total predictions stay
/// within kMaxPredictions.
MicroInstance random_micro_instance(RandomStream& rng, const MicroLimits& limits = {});

/// Per-class AP at one IoU threshold; nullopt for classes without ground
/// truth. Throws InstanceTooLarge above kMaxPredictions predictions.
std::vector<std::optional<double>> brute_force_ap_oracle(const MicroInstance& instance,
                                                         double iou_threshold,
                                                         double confidence_floor = 0.001);

struct OracleEvaluation {
  /// [class][threshold]; nullopt for classes without ground truth.
  std::vector<std::optional<std::vector<double>>> ap;
  double map50 = 0.0;
  double map50_95 = 0.0;
};

/// Thresholds must contain 0.50.
OracleEvaluation brute_force_evaluate(const MicroInstance& instance,
                                      const std::vector<double>& thresholds,
                                      double confidence_floor = 0.001);

struct SuiteReport {
  int trials = 0;
  int ap_mismatches = 0;
  int map_mismatches = 0;
  int monotonicity_violations = 0;
  double max_abs_diff = 0.0;
  std::vector<std::string> failures;  // first few, human readable

  bool passed() const noexcept {
    return ap_mismatches == 0 && map_mismatches == 0 && monotonicity_violations == 0;
  }
};

/// Compares evaluate_split (all-points) with brute_force_evaluate on `trials`
/// random instances. Also checks map50_95 <= map50 on each instance, allowing
/// 1e-12 for summation order.
SuiteReport run_oracle_suite(std::uint64_t seed, int trials, double tolerance = 1e-9,
                             const MicroLimits& limits = {});

}  // namespace dronespec::eval::oracle
