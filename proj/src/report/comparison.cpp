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
#include <array>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "dronespec/report.hpp"

namespace dronespec::report {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 11> kColumns = {
    "modality", "preprocess", "inference", "postprocess", "total",           "map50",
    "map50_95", "precision",  "recall",    "f1",          "training_time_h"};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::vector<std::string> display_cells(const ModalityResult& r) {
  const auto& t = r.timing;
  const auto& s = r.scores;
  return {r.modality,
          fmt("%.1f", t.preprocess_ms),
          fmt("%.1f", t.inference_ms),
          fmt("%.1f", t.postprocess_ms),
          fmt("%.1f", t.total_ms),
          fmt("%.3f", s.map50),
          fmt("%.3f", s.map50_95),
          fmt("%.3f", s.precision),
          fmt("%.3f", s.recall),
          fmt("%.3f", s.f1),
          r.training_time_h ? fmt("%.3f", *r.training_time_h) : std::string("-")};
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

DetectionScores DetectionScores::from_summary(const eval::EvalSummary& s) {
  return DetectionScores{s.map50, s.map50_95, s.precision, s.recall, s.f1};
}

DetectionScores DetectionScores::from_headline(const eval::SummaryHeadline& h) {
  return DetectionScores{h.map50, h.map50_95, h.precision, h.recall, h.f1};
}

ComparisonTable compose_comparison(std::vector<ModalityResult> results) {
  if (results.empty()) throw ReportError(ErrorKind::EmptyInput, "nothing to compare");
  std::set<std::string> names;
  for (const auto& r : results) {
    if (!names.insert(r.modality).second) {
      throw ReportError(ErrorKind::DuplicateModalityName, "modality '" + r.modality + "' listed twice");
    }
  }
  std::sort(results.begin(), results.end(), [](const ModalityResult& a, const ModalityResult& b) {
    if (a.scores.map50 != b.scores.map50) return a.scores.map50 > b.scores.map50;
    if (a.scores.map50_95 != b.scores.map50_95) return a.scores.map50_95 > b.scores.map50_95;
    return a.modality < b.modality;
  });
  ComparisonTable table;
  int rank = 1;
  for (auto& r : results) table.rows.push_back(ComparisonRow{rank++, std::move(r)});
  return table;
}

Format parse_format(std::string_view name) {
  if (name == "markdown" || name == "md") return Format::Markdown;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (markdown, csv, json)");
}

std::string emit(const ComparisonTable& table, Format format) {
  std::string out;
  switch (format) {
    case Format::Markdown: {
      out += "|";
      for (auto c : kColumns) out += " " + std::string(c) + " |";
      out += "\n|";
      for (std::size_t i = 0; i < kColumns.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
      out += "\n";
      for (const auto& row : table.rows) {
        out += "|";
        for (const auto& cell : display_cells(row.result)) out += " " + cell + " |";
        out += "\n";
      }
      break;
    }
    case Format::Csv: {
      for (std::size_t i = 0; i < kColumns.size(); ++i) out += (i ? "," : "") + std::string(kColumns[i]);
      out += "\n";
      for (const auto& row : table.rows) {
        const auto cells = display_cells(row.result);
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + csv_escape(cells[i]);
        out += "\n";
      }
      break;
    }
    case Format::Json: {
      json rows = json::array();
      for (const auto& row : table.rows) {
        const auto& r = row.result;
        json j;
        j["modality"] = r.modality;
        j["preprocess"] = r.timing.preprocess_ms;
        j["inference"] = r.timing.inference_ms;
        j["postprocess"] = r.timing.postprocess_ms;
        j["total"] = r.timing.total_ms;
        j["map50"] = r.scores.map50;
        j["map50_95"] = r.scores.map50_95;
        j["precision"] = r.scores.precision;
        j["recall"] = r.scores.recall;
        j["f1"] = r.scores.f1;
        if (r.training_time_h) j["training_time_h"] = *r.training_time_h;
        else j["training_time_h"] = "-";
        rows.push_back(std::move(j));
      }
      json doc;
      doc["ranking_key"] = "map50 desc, map50_95 desc";
      doc["time_unit"] = "ms (per-image means)";
      doc["rows"] = std::move(rows);
      out = doc.dump(2) + "\n";
      break;
    }
  }
  return out;
}

}  // namespace dronespec::report
