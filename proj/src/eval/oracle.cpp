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
#include <set>
#include <sstream>

#include "dronespec/oracle.hpp"

namespace dronespec::eval::oracle {

namespace {

// Corner form, computed independently of eval::iou.
struct Corners {
  double x0, y0, x1, y1;
};

Corners corners(const NormBox& b) {
  return Corners{b.cx - b.w / 2.0, b.cy - b.h / 2.0, b.cx + b.w / 2.0, b.cy + b.h / 2.0};
}

double overlap_ratio(const NormBox& a, const NormBox& b) {
  const Corners p = corners(a);
  const Corners q = corners(b);
  const double ox = std::max(0.0, std::min(p.x1, q.x1) - std::max(p.x0, q.x0));
  const double oy = std::max(0.0, std::min(p.y1, q.y1) - std::max(p.y0, q.y0));
  const double shared = ox * oy;
  if (shared == 0.0) return 0.0;
  const double pa = (p.x1 - p.x0) * (p.y1 - p.y0);
  const double qa = (q.x1 - q.x0) * (q.y1 - q.y0);
  return shared / (pa + qa - shared);
}

struct Cut {
  double confidence;
  std::size_t image_rank;
  std::size_t input_rank;
  bool hit;
};

// All predictions of one class at one threshold, each marked hit/miss, in
// sweep order (confidence desc, then image order, then input order).
std::vector<Cut> mark_predictions(const MicroInstance& inst, int cls, double threshold,
                                  double floor, std::int64_t& num_gt) {
  std::vector<Cut> cuts;
  num_gt = 0;
  std::size_t image_rank = 0;
  for (const auto& [image_id, image_gts] : inst.gts) {
    std::vector<NormBox> truth;
    for (const auto& g : image_gts) {
      if (g.class_id == cls) truth.push_back(g.box);
    }
    num_gt += static_cast<std::int64_t>(truth.size());

    std::vector<std::pair<PredRecord, std::size_t>> mine;
    if (auto it = inst.preds.find(image_id); it != inst.preds.end()) {
      std::size_t k = 0;
      for (const auto& p : it->second) {
        if (p.class_id == cls && p.confidence >= floor) mine.emplace_back(p, k++);
      }
    }
    // Selection order by repeated scanning for the most confident remaining
    // prediction (first in input order on ties).
    std::vector<bool> done(mine.size(), false);
    std::vector<bool> claimed(truth.size(), false);
    for (std::size_t step = 0; step < mine.size(); ++step) {
      std::size_t pick = mine.size();
      for (std::size_t i = 0; i < mine.size(); ++i) {
        if (done[i]) continue;
        if (pick == mine.size() || mine[i].first.confidence > mine[pick].first.confidence) pick = i;
      }
      done[pick] = true;
      std::size_t target = truth.size();
      double target_overlap = -1.0;
      for (std::size_t g = 0; g < truth.size(); ++g) {
        if (claimed[g]) continue;
        const double v = overlap_ratio(mine[pick].first.box, truth[g]);
        if (v >= threshold && v > target_overlap) {
          target = g;
          target_overlap = v;
        }
      }
      const bool hit = target < truth.size();
      if (hit) claimed[target] = true;
      cuts.push_back(Cut{mine[pick].first.confidence, image_rank, mine[pick].second, hit});
    }
    ++image_rank;
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.image_rank != b.image_rank) return a.image_rank < b.image_rank;
    return a.input_rank < b.input_rank;
  });
  return cuts;
}

double enumerate_ap(const std::vector<Cut>& cuts, std::int64_t num_gt) {
  if (num_gt == 0 || cuts.empty()) return 0.0;
  const std::size_t n = cuts.size();
  std::vector<double> prec(n), rec(n);
  // Every cut point k evaluated from scratch over the first k+1 predictions.
  for (std::size_t k = 0; k < n; ++k) {
    std::int64_t hits = 0;
    for (std::size_t j = 0; j <= k; ++j) hits += cuts[j].hit ? 1 : 0;
    prec[k] = static_cast<double>(hits) / static_cast<double>(k + 1);
    rec[k] = static_cast<double>(hits) / static_cast<double>(num_gt);
  }
  // Envelope integrated as a step function over the distinct recall levels.
  std::set<double> levels(rec.begin(), rec.end());
  double area = 0.0;
  double previous = 0.0;
  for (double level : levels) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (rec[k] >= level) best = std::max(best, prec[k]);
    }
    area += (level - previous) * best;
    previous = level;
  }
  return area;
}

std::size_t prediction_total(const MicroInstance& inst) {
  std::size_t n = 0;
  for (const auto& [id, p] : inst.preds) n += p.size();
  return n;
}

NormBox random_box(RandomStream& rng) {
  const double w = rng.uniform(0.05, 0.5);
  const double h = rng.uniform(0.05, 0.5);
  const double cx = rng.uniform(w / 2.0, 1.0 - w / 2.0);
  const double cy = rng.uniform(h / 2.0, 1.0 - h / 2.0);
  return NormBox{cx, cy, w, h};
}

NormBox jitter(RandomStream& rng, const NormBox& b) {
  double w = std::clamp(b.w * rng.uniform(0.7, 1.3), 0.02, 1.0);
  double h = std::clamp(b.h * rng.uniform(0.7, 1.3), 0.02, 1.0);
  double cx = b.cx + b.w * rng.uniform(-0.25, 0.25);
  double cy = b.cy + b.h * rng.uniform(-0.25, 0.25);
  cx = std::clamp(cx, w / 2.0, 1.0 - w / 2.0);
  cy = std::clamp(cy, h / 2.0, 1.0 - h / 2.0);
  return NormBox{cx, cy, w, h};
}

}  // namespace

MicroInstance random_micro_instance(RandomStream& rng, const MicroLimits& limits) {
  MicroInstance inst;
  inst.num_classes = static_cast<int>(rng.uniform_int(1, limits.max_classes));
  const int images = static_cast<int>(rng.uniform_int(1, limits.max_images));
  std::size_t budget = kMaxPredictions;
  for (int i = 0; i < images; ++i) {
    const std::string id = "img" + std::to_string(i);
    auto& gts = inst.gts[id];
    auto& preds = inst.preds[id];
    const int n_gt = static_cast<int>(rng.uniform_int(0, limits.max_boxes));
    for (int g = 0; g < n_gt; ++g) {
      gts.push_back(GtRecord{static_cast<int>(rng.uniform_int(0, inst.num_classes - 1)), random_box(rng)});
    }
    for (const auto& g : gts) {
      if (static_cast<int>(preds.size()) >= limits.max_boxes || budget == 0) break;
      if (rng.uniform01() < 0.75) {
        int cls = g.class_id;
        if (rng.uniform01() < 0.15) cls = static_cast<int>(rng.uniform_int(0, inst.num_classes - 1));
        preds.push_back(PredRecord{cls, jitter(rng, g.box), rng.uniform(0.01, 1.0)});
        --budget;
      }
      // Occasional duplicate detection on the same object.
      if (rng.uniform01() < 0.15 && static_cast<int>(preds.size()) < limits.max_boxes && budget > 0) {
        preds.push_back(PredRecord{g.class_id, jitter(rng, g.box), rng.uniform(0.01, 1.0)});
        --budget;
      }
    }
    const int strays = static_cast<int>(rng.uniform_int(0, 2));
    for (int s = 0; s < strays; ++s) {
      if (static_cast<int>(preds.size()) >= limits.max_boxes || budget == 0) break;
      preds.push_back(PredRecord{static_cast<int>(rng.uniform_int(0, inst.num_classes - 1)),
                                 random_box(rng), rng.uniform(0.01, 1.0)});
      --budget;
    }
  }
  return inst;
}

std::vector<std::optional<double>> brute_force_ap_oracle(const MicroInstance& instance,
                                                         double iou_threshold,
                                                         double confidence_floor) {
  if (prediction_total(instance) > kMaxPredictions) {
    throw EvalError(ErrorKind::InstanceTooLarge,
                    "oracle accepts at most " + std::to_string(kMaxPredictions) + " predictions");
  }
  std::vector<std::optional<double>> out(static_cast<std::size_t>(instance.num_classes));
  for (int c = 0; c < instance.num_classes; ++c) {
    std::int64_t num_gt = 0;
    const auto cuts = mark_predictions(instance, c, iou_threshold, confidence_floor, num_gt);
    if (num_gt > 0) out[static_cast<std::size_t>(c)] = enumerate_ap(cuts, num_gt);
  }
  return out;
}

OracleEvaluation brute_force_evaluate(const MicroInstance& instance,
                                      const std::vector<double>& thresholds,
                                      double confidence_floor) {
  const auto half = std::find(thresholds.begin(), thresholds.end(), 0.5);
  if (half == thresholds.end()) throw EvalError(ErrorKind::InvalidConfig, "thresholds must include 0.50");
  const std::size_t i50 = static_cast<std::size_t>(half - thresholds.begin());

  OracleEvaluation ev;
  ev.ap.resize(static_cast<std::size_t>(instance.num_classes));
  for (double t : thresholds) {
    const auto per_class = brute_force_ap_oracle(instance, t, confidence_floor);
    for (std::size_t c = 0; c < per_class.size(); ++c) {
      if (!per_class[c]) continue;
      if (!ev.ap[c]) ev.ap[c].emplace();
      ev.ap[c]->push_back(*per_class[c]);
    }
  }
  // mAP@50 = (1/N) sum_i AP_i; mAP@50-95 = 1/(T N) sum_t sum_i AP_i, over classes with truth.
  double n = 0.0, s50 = 0.0, s_all = 0.0;
  for (const auto& row : ev.ap) {
    if (!row) continue;
    n += 1.0;
    s50 += (*row)[i50];
    for (double v : *row) s_all += v;
  }
  if (n > 0.0) {
    ev.map50 = s50 / n;
    ev.map50_95 = s_all / (static_cast<double>(thresholds.size()) * n);
  }
  return ev;
}

SuiteReport run_oracle_suite(std::uint64_t seed, int trials, double tolerance,
                             const MicroLimits& limits) {
  SuiteReport report;
  RandomStream rng(seed);
  MatchConfig cfg;
  cfg.interpolation = Interpolation::AllPoints;

  auto note = [&](int trial, const std::string& what) {
    if (report.failures.size() < 10) report.failures.push_back("trial " + std::to_string(trial) + ": " + what);
  };

  for (int trial = 0; trial < trials; ++trial) {
    const MicroInstance inst = random_micro_instance(rng, limits);
    std::vector<std::string> names;
    for (int c = 0; c < inst.num_classes; ++c) names.push_back("c" + std::to_string(c));
    const ClassTable classes(names);

    const EvalSummary fast = evaluate_split(inst.gts, inst.preds, classes, cfg);
    const OracleEvaluation slow = brute_force_evaluate(inst, cfg.iou_thresholds, cfg.confidence_floor);
    ++report.trials;

    for (std::size_t c = 0; c < slow.ap.size(); ++c) {
      const auto& mine = fast.per_class[c].ap;
      if (slow.ap[c].has_value() != !mine.empty()) {
        ++report.ap_mismatches;
        note(trial, "class " + std::to_string(c) + " ground-truth presence disagrees");
        continue;
      }
      if (!slow.ap[c]) continue;
      for (std::size_t t = 0; t < mine.size(); ++t) {
        const double d = std::abs(mine[t] - (*slow.ap[c])[t]);
        report.max_abs_diff = std::max(report.max_abs_diff, d);
        if (d > tolerance) {
          ++report.ap_mismatches;
          std::ostringstream os;
          os << "class " << c << " threshold " << cfg.iou_thresholds[t] << ": AP " << mine[t]
             << " vs oracle " << (*slow.ap[c])[t];
          note(trial, os.str());
        }
      }
    }
    const double d50 = std::abs(fast.map50 - slow.map50);
    const double d95 = std::abs(fast.map50_95 - slow.map50_95);
    report.max_abs_diff = std::max({report.max_abs_diff, d50, d95});
    if (d50 > tolerance || d95 > tolerance) {
      ++report.map_mismatches;
      note(trial, "mAP disagreement");
    }
    if (fast.map50_95 > fast.map50 + 1e-12 || slow.map50_95 > slow.map50 + 1e-12) {
      ++report.monotonicity_violations;
      note(trial, "mAP@50-95 exceeds mAP@50");
    }
  }
  return report;
}

}  // namespace dronespec::eval::oracle
