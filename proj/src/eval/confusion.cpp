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
#include <tuple>

#include "dronespec/eval.hpp"

namespace dronespec::eval {

ConfusionMatrix::ConfusionMatrix(std::size_t num_classes)
    : n_(num_classes), cells_((num_classes + 1) * (num_classes + 1), 0) {}

std::int64_t ConfusionMatrix::column_sum(std::size_t truth) const {
  std::int64_t s = 0;
  for (std::size_t p = 0; p <= n_; ++p) s += at(p, truth);
  return s;
}

std::vector<std::vector<double>> ConfusionMatrix::row_normalized() const {
  std::vector<std::vector<double>> out(n_ + 1, std::vector<double>(n_ + 1, 0.0));
  for (std::size_t p = 0; p <= n_; ++p) {
    std::int64_t row = 0;
    for (std::size_t t = 0; t <= n_; ++t) row += at(p, t);
    if (row == 0) continue;
    for (std::size_t t = 0; t <= n_; ++t) {
      out[p][t] = static_cast<double>(at(p, t)) / static_cast<double>(row);
    }
  }
  return out;
}

void accumulate_confusion(ConfusionMatrix& cm, std::span<const PredRecord> preds,
                          std::span<const GtRecord> gts, double cm_conf, double cm_iou) {
  std::vector<std::size_t> kept;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    if (preds[p].confidence >= cm_conf) kept.push_back(p);
  }

  // Candidate pairs ordered by IoU descending, then gt index, then pred index.
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t g = 0; g < gts.size(); ++g) {
    for (std::size_t p : kept) {
      const double v = iou(preds[p].box, gts[g].box);
      if (v >= cm_iou && v > 0.0) pairs.emplace_back(v, g, p);
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
    return std::get<2>(a) < std::get<2>(b);
  });

  std::vector<bool> gt_used(gts.size(), false);
  std::vector<bool> pred_used(preds.size(), false);
  for (const auto& [v, g, p] : pairs) {
    if (gt_used[g] || pred_used[p]) continue;
    gt_used[g] = true;
    pred_used[p] = true;
    cm.at(static_cast<std::size_t>(preds[p].class_id), static_cast<std::size_t>(gts[g].class_id)) += 1;
  }
  for (std::size_t g = 0; g < gts.size(); ++g) {
    if (!gt_used[g]) cm.at(cm.background(), static_cast<std::size_t>(gts[g].class_id)) += 1;
  }
  for (std::size_t p : kept) {
    if (!pred_used[p]) cm.at(static_cast<std::size_t>(preds[p].class_id), cm.background()) += 1;
  }
}

ConfusionMatrix confusion_matrix(const GtSet& gts, const PredSet& preds, const ClassTable& classes,
                                 double cm_conf, double cm_iou) {
  ConfusionMatrix cm(classes.size());
  static const std::vector<PredRecord> kNoPreds;
  static const std::vector<GtRecord> kNoGts;
  for (const auto& [image_id, image_gts] : gts) {
    auto it = preds.find(image_id);
    accumulate_confusion(cm, it == preds.end() ? kNoPreds : it->second, image_gts, cm_conf, cm_iou);
  }
  for (const auto& [image_id, image_preds] : preds) {
    if (!gts.count(image_id)) accumulate_confusion(cm, image_preds, kNoGts, cm_conf, cm_iou);
  }
  return cm;
}

}  // namespace dronespec::eval
