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
#include <numeric>

#include "dronespec/eval.hpp"

namespace dronespec::eval {

PrCurve pr_curve(std::span<const ScoredFlag> flags, std::int64_t num_gt) {
  PrCurve curve;
  curve.num_gt = num_gt;
  if (num_gt <= 0) return curve;

  std::vector<std::size_t> order(flags.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return flags[a].confidence > flags[b].confidence;
  });

  std::int64_t tp = 0;
  std::int64_t fp = 0;
  curve.points.reserve(flags.size());
  for (std::size_t i : order) {
    (flags[i].true_positive ? tp : fp) += 1;
    curve.points.push_back(PrPoint{static_cast<double>(tp) / static_cast<double>(num_gt),
                                   static_cast<double>(tp) / static_cast<double>(tp + fp)});
  }
  return curve;
}

double average_precision(const PrCurve& curve, Interpolation mode) {
  const auto& pts = curve.points;
  if (pts.empty()) return 0.0;

  // Monotone envelope: precision at i becomes the max precision at i or later.
  // Recall is non-decreasing along the sweep, so "later" covers recall >= r_i.
  std::vector<double> envelope(pts.size());
  double running = 0.0;
  for (std::size_t i = pts.size(); i-- > 0;) {
    running = std::max(running, pts[i].precision);
    envelope[i] = running;
  }

  if (mode == Interpolation::AllPoints) {
    double area = 0.0;
    double prev_recall = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      area += (pts[i].recall - prev_recall) * envelope[i];
      prev_recall = pts[i].recall;
    }
    return std::clamp(area, 0.0, 1.0);
  }

  double sum = 0.0;
  std::size_t i = 0;
  for (int step = 0; step <= 100; ++step) {
    const double r = static_cast<double>(step) / 100.0;
    while (i < pts.size() && pts[i].recall < r) ++i;
    if (i == pts.size()) break;  // no operating point reaches this recall
    sum += envelope[i];
  }
  return std::clamp(sum / 101.0, 0.0, 1.0);
}

}  // namespace dronespec::eval
