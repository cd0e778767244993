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

#include <json.hpp>

#include "dronespec/eval.hpp"

namespace dronespec::eval {

using nlohmann::json;

std::string summary_to_json(const EvalSummary& s, bool include_curves) {
  json doc;
  doc["map50"] = s.map50;
  doc["map50_95"] = s.map50_95;
  doc["precision"] = s.precision;
  doc["recall"] = s.recall;
  doc["f1"] = s.f1;
  doc["averaging"] = "macro";
  doc["operating_confidence"] = s.operating_confidence;
  doc["interpolation"] = s.interpolation == Interpolation::Point101 ? "101-point" : "all-points";
  doc["iou_thresholds"] = s.thresholds;

  json classes = json::array();
  for (const auto& c : s.per_class) {
    json jc;
    jc["class_id"] = c.class_id;
    jc["name"] = c.name;
    jc["num_gt"] = c.num_gt;
    jc["num_pred"] = c.num_pred;
    if (c.ap.empty()) {
      jc["ap"] = nullptr;
    } else {
      jc["ap"] = c.ap;
    }
    jc["tp"] = c.counts.true_positives;
    jc["fp"] = c.counts.false_positives;
    jc["fn"] = c.counts.false_negatives;
    jc["precision"] = c.prf.precision;
    jc["recall"] = c.prf.recall;
    jc["f1"] = c.prf.f1;
    if (include_curves) {
      json pts = json::array();
      for (const auto& p : c.curve50.points) pts.push_back({p.recall, p.precision});
      jc["pr_curve_50"] = std::move(pts);
    }
    classes.push_back(std::move(jc));
  }
  doc["per_class"] = std::move(classes);

  const auto& cm = s.confusion;
  json rows = json::array();
  for (std::size_t p = 0; p <= cm.num_classes(); ++p) {
    json row = json::array();
    for (std::size_t t = 0; t <= cm.num_classes(); ++t) row.push_back(cm.at(p, t));
    rows.push_back(std::move(row));
  }
  doc["confusion_matrix"] = std::move(rows);
  doc["confusion_matrix_row_normalized"] = cm.row_normalized();
  doc["confusion_matrix_layout"] = "rows=predicted, columns=true, last index=background";
  return doc.dump(2) + "\n";
}

SummaryHeadline parse_summary_headline(std::string_view json_text) {
  try {
    const auto doc = json::parse(json_text);
    SummaryHeadline h;
    h.map50 = doc.at("map50").get<double>();
    h.map50_95 = doc.at("map50_95").get<double>();
    h.precision = doc.at("precision").get<double>();
    h.recall = doc.at("recall").get<double>();
    h.f1 = doc.at("f1").get<double>();
    return h;
  } catch (const json::exception& e) {
    throw EvalError(ErrorKind::SummaryUnreadable, e.what());
  }
}

}  // namespace dronespec::eval
