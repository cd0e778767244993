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

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownImageId: return "UnknownImageId";
    case ErrorKind::ClassIdOutOfRange: return "ClassIdOutOfRange";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::SummaryUnreadable: return "SummaryUnreadable";
  }
  return "Unknown";
}

EvalError::EvalError(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

double iou(const NormBox& a, const NormBox& b) {
  const double al = a.left(), ar = a.right(), at = a.top(), ab = a.bottom();
  const double bl = b.left(), br = b.right(), bt = b.top(), bb = b.bottom();
  const double iw = std::min(ar, br) - std::max(al, bl);
  const double ih = std::min(ab, bb) - std::max(at, bt);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  // Areas from the same corner differences as the intersection, so iou(a, a) is exactly 1.
  const double area_a = (ar - al) * (ab - at);
  const double area_b = (br - bl) * (bb - bt);
  const double inter = iw * ih;
  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double f1_score(double precision, double recall) {
  const double denom = precision + recall;
  return denom > 0.0 ? 2.0 * precision * recall / denom : 0.0;
}

PrecisionRecallF1 precision_recall_f1(const EvalCounts& c) {
  PrecisionRecallF1 out;
  const auto pd = c.true_positives + c.false_positives;
  const auto rd = c.true_positives + c.false_negatives;
  out.precision = pd > 0 ? static_cast<double>(c.true_positives) / static_cast<double>(pd) : 0.0;
  out.recall = rd > 0 ? static_cast<double>(c.true_positives) / static_cast<double>(rd) : 0.0;
  out.f1 = f1_score(out.precision, out.recall);
  return out;
}

EvalCounts MatchResult::counts() const {
  EvalCounts c;
  for (bool tp : is_true_positive) (tp ? c.true_positives : c.false_positives) += 1;
  c.false_negatives = false_negatives;
  return c;
}

MatchResult match_detections(std::span<const PredRecord> preds, std::span<const GtRecord> gts,
                             double iou_threshold) {
  MatchResult out;
  out.is_true_positive.assign(preds.size(), false);
  out.matched_gt.assign(preds.size(), -1);

  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].confidence > preds[b].confidence;
  });

  std::vector<bool> taken(gts.size(), false);
  for (std::size_t p : order) {
    int best = -1;
    double best_iou = 0.0;
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (taken[g]) continue;
      const double v = iou(preds[p].box, gts[g].box);
      if (v >= iou_threshold && (best < 0 || v > best_iou)) {
        best = static_cast<int>(g);
        best_iou = v;
      }
    }
    if (best >= 0) {
      taken[static_cast<std::size_t>(best)] = true;
      out.is_true_positive[p] = true;
      out.matched_gt[p] = best;
    }
  }
  out.false_negatives = static_cast<std::int64_t>(std::count(taken.begin(), taken.end(), false));
  return out;
}

}  // namespace dronespec::eval
