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

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dronespec/report.hpp"

namespace dronespec::report {

using nlohmann::json;

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DuplicateModalityName: return "DuplicateModalityName";
    case ErrorKind::NegativeDuration: return "NegativeDuration";
    case ErrorKind::TimingUnreadable: return "TimingUnreadable";
  }
  return "Unknown";
}

ReportError::ReportError(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

TimingSummary aggregate_timing(const std::vector<TimingRecord>& records) {
  if (records.empty()) throw ReportError(ErrorKind::EmptyInput, "no timing records");
  TimingSummary s;
  s.count = records.size();
  for (const auto& r : records) {
    if (!(r.preprocess_ms >= 0.0 && r.inference_ms >= 0.0 && r.postprocess_ms >= 0.0)) {
      throw ReportError(ErrorKind::NegativeDuration, "negative duration for image '" + r.image_id + "'");
    }
    s.preprocess_ms += r.preprocess_ms;
    s.inference_ms += r.inference_ms;
    s.postprocess_ms += r.postprocess_ms;
  }
  const double n = static_cast<double>(records.size());
  s.preprocess_ms /= n;
  s.inference_ms /= n;
  s.postprocess_ms /= n;
  s.total_ms = s.preprocess_ms + s.inference_ms + s.postprocess_ms;
  return s;
}

std::vector<TimingRecord> parse_timing_lines(std::string_view text) {
  std::vector<TimingRecord> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      const auto doc = json::parse(line);
      TimingRecord r;
      r.image_id = doc.at("image_id").get<std::string>();
      r.preprocess_ms = doc.at("preprocess_ms").get<double>();
      r.inference_ms = doc.at("inference_ms").get<double>();
      r.postprocess_ms = doc.at("postprocess_ms").get<double>();
      if (r.preprocess_ms < 0.0 || r.inference_ms < 0.0 || r.postprocess_ms < 0.0) {
        throw ReportError(ErrorKind::NegativeDuration,
                          "line " + std::to_string(line_no) + ": durations must be >= 0");
      }
      out.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw ReportError(ErrorKind::TimingUnreadable, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TimingRecord> load_timing_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReportError(ErrorKind::TimingUnreadable, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_timing_lines(buf.str());
}

std::string format_timing_line(const TimingRecord& r) {
  json doc;
  doc["image_id"] = r.image_id;
  doc["preprocess_ms"] = r.preprocess_ms;
  doc["inference_ms"] = r.inference_ms;
  doc["postprocess_ms"] = r.postprocess_ms;
  return doc.dump();
}

}  // namespace dronespec::report
