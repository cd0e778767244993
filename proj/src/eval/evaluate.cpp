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
#include <cmath>
#include <numeric>

#include "dronespec/eval.hpp"

namespace dronespec::eval {

std::vector<double> MatchConfig::default_thresholds() {
  std::vector<double> t;
  // (50 + 5i) / 100 keeps each threshold the correctly rounded decimal.
  for (int i = 0; i < 10; ++i) t.push_back(static_cast<double>(50 + 5 * i) / 100.0);
  return t;
}

namespace {

std::size_t index_of_half(const std::vector<double>& thresholds) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (std::abs(thresholds[i] - 0.5) < 1e-12) return i;
  }
  throw EvalError(ErrorKind::InvalidConfig, "IoU thresholds must include 0.50");
}

void check_classes(const GtSet& gts, const PredSet& preds, const ClassTable& classes) {
  for (const auto& [id, recs] : gts) {
    for (const auto& r : recs) {
      if (!classes.contains(r.class_id)) {
        throw EvalError(ErrorKind::ClassIdOutOfRange,
                        "ground truth class " + std::to_string(r.class_id) + " in image '" + id + "'");
      }
    }
  }
  for (const auto& [id, recs] : preds) {
    if (!gts.count(id)) throw EvalError(ErrorKind::UnknownImageId, "predictions for unknown image '" + id + "'");
    for (const auto& r : recs) {
      if (!classes.contains(r.class_id)) {
        throw EvalError(ErrorKind::ClassIdOutOfRange,
                        "predicted class " + std::to_string(r.class_id) + " in image '" + id + "'");
      }
    }
  }
}

// Per-image, per-class views of one split, in image-id order.
struct ClassSlices {
  std::vector<std::vector<PredRecord>> preds;  // [image]
  std::vector<std::vector<GtRecord>> gts;      // [image]
  std::int64_t num_gt = 0;
  std::int64_t num_pred = 0;
};

struct OperatingSweep {
  double confidence = 0.0;
  std::vector<EvalCounts> counts;  // [class]
};

}  // namespace

void MatchConfig::validate() const {
  if (iou_thresholds.empty()) throw EvalError(ErrorKind::InvalidConfig, "no IoU thresholds");
  for (std::size_t i = 0; i < iou_thresholds.size(); ++i) {
    const double t = iou_thresholds[i];
    if (!(t > 0.0 && t <= 1.0)) throw EvalError(ErrorKind::InvalidConfig, "IoU thresholds must lie in (0, 1]");
    if (i > 0 && !(t > iou_thresholds[i - 1])) {
      throw EvalError(ErrorKind::InvalidConfig, "IoU thresholds must be strictly increasing");
    }
  }
  index_of_half(iou_thresholds);
  auto fraction = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!fraction(confidence_floor) || !fraction(cm_conf) || !fraction(cm_iou)) {
    throw EvalError(ErrorKind::InvalidConfig, "confidence_floor, cm_conf and cm_iou must lie in [0, 1]");
  }
}

EvalSummary evaluate_split(const GtSet& gts, const PredSet& preds, const ClassTable& classes,
                           const MatchConfig& config) {
  config.validate();
  check_classes(gts, preds, classes);
  const std::size_t n_classes = classes.size();
  const std::size_t i50 = index_of_half(config.iou_thresholds);

  PredSet kept;
  for (const auto& [id, recs] : preds) {
    auto& out = kept[id];
    for (const auto& r : recs) {
      if (r.confidence >= config.confidence_floor) out.push_back(r);
    }
  }

  std::vector<ClassSlices> slices(n_classes);
  for (auto& s : slices) {
    s.preds.resize(gts.size());
    s.gts.resize(gts.size());
  }
  std::size_t image_index = 0;
  for (const auto& [id, image_gts] : gts) {
    for (const auto& g : image_gts) {
      auto& s = slices[static_cast<std::size_t>(g.class_id)];
      s.gts[image_index].push_back(g);
      ++s.num_gt;
    }
    if (auto it = kept.find(id); it != kept.end()) {
      for (const auto& p : it->second) {
        auto& s = slices[static_cast<std::size_t>(p.class_id)];
        s.preds[image_index].push_back(p);
        ++s.num_pred;
      }
    }
    ++image_index;
  }

  EvalSummary summary;
  summary.thresholds = config.iou_thresholds;
  summary.interpolation = config.interpolation;
  summary.per_class.resize(n_classes);

  // Flags at IoU 0.50, tagged with class, for the operating-point sweep.
  struct TaggedFlag {
    double confidence;
    bool tp;
    std::size_t class_id;
  };
  std::vector<TaggedFlag> flags50;

  for (std::size_t c = 0; c < n_classes; ++c) {
    const auto& s = slices[c];
    auto& cr = summary.per_class[c];
    cr.class_id = static_cast<int>(c);
    cr.name = classes.name(static_cast<int>(c));
    cr.num_gt = s.num_gt;
    cr.num_pred = s.num_pred;

    for (std::size_t ti = 0; ti < config.iou_thresholds.size(); ++ti) {
      std::vector<ScoredFlag> flags;
      for (std::size_t img = 0; img < s.preds.size(); ++img) {
        if (s.preds[img].empty()) continue;
        const auto m = match_detections(s.preds[img], s.gts[img], config.iou_thresholds[ti]);
        for (std::size_t p = 0; p < s.preds[img].size(); ++p) {
          flags.push_back(ScoredFlag{s.preds[img][p].confidence, m.is_true_positive[p]});
        }
      }
      if (ti == i50) {
        for (const auto& f : flags) flags50.push_back(TaggedFlag{f.confidence, f.true_positive, c});
        cr.curve50 = pr_curve(flags, s.num_gt);
      }
      if (s.num_gt > 0) cr.ap.push_back(average_precision(pr_curve(flags, s.num_gt), config.interpolation));
    }
  }

  // mAP means run over classes with ground truth, in class order.
  std::size_t with_gt = 0;
  double sum50 = 0.0;
  double sum_all = 0.0;
  for (const auto& cr : summary.per_class) {
    if (cr.num_gt == 0) continue;
    ++with_gt;
    sum50 += cr.ap[i50];
    sum_all += std::accumulate(cr.ap.begin(), cr.ap.end(), 0.0) / static_cast<double>(cr.ap.size());
  }
  if (with_gt > 0) {
    summary.map50 = sum50 / static_cast<double>(with_gt);
    summary.map50_95 = sum_all / static_cast<double>(with_gt);
  }

  // Operating point: the confidence cut maximizing F1 of the macro precision
  // and recall. Sweep cuts in descending confidence, one cut per distinct value;
  // strict improvement keeps the highest confidence among ties.
  std::stable_sort(flags50.begin(), flags50.end(),
                   [](const TaggedFlag& a, const TaggedFlag& b) { return a.confidence > b.confidence; });
  std::vector<EvalCounts> running(n_classes);
  for (std::size_t c = 0; c < n_classes; ++c) running[c].false_negatives = slices[c].num_gt;

  auto macro = [&](const std::vector<EvalCounts>& counts) {
    double p = 0.0, r = 0.0;
    for (std::size_t c = 0; c < n_classes; ++c) {
      if (slices[c].num_gt == 0) continue;
      const auto prf = precision_recall_f1(counts[c]);
      p += prf.precision;
      r += prf.recall;
    }
    if (with_gt == 0) return PrecisionRecallF1{};
    p /= static_cast<double>(with_gt);
    r /= static_cast<double>(with_gt);
    return PrecisionRecallF1{p, r, f1_score(p, r)};
  };

  OperatingSweep best{0.0, running};
  PrecisionRecallF1 best_prf = macro(running);
  bool have_best = false;
  for (std::size_t i = 0; i < flags50.size();) {
    const double conf = flags50[i].confidence;
    for (; i < flags50.size() && flags50[i].confidence == conf; ++i) {
      auto& cnt = running[flags50[i].class_id];
      if (flags50[i].tp) {
        ++cnt.true_positives;
        --cnt.false_negatives;
      } else {
        ++cnt.false_positives;
      }
    }
    const auto prf = macro(running);
    if (!have_best || prf.f1 > best_prf.f1) {
      have_best = true;
      best_prf = prf;
      best = OperatingSweep{conf, running};
    }
  }
  summary.precision = best_prf.precision;
  summary.recall = best_prf.recall;
  summary.f1 = best_prf.f1;
  summary.operating_confidence = best.confidence;
  for (std::size_t c = 0; c < n_classes; ++c) {
    summary.per_class[c].counts = best.counts[c];
    summary.per_class[c].prf = precision_recall_f1(best.counts[c]);
  }

  summary.confusion = confusion_matrix(gts, kept, classes, config.cm_conf, config.cm_iou);
  return summary;
}

}  // namespace dronespec::eval
