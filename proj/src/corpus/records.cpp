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
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "dronespec/corpus.hpp"

namespace dronespec::corpus {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::WrongTokenCount: return "WrongTokenCount";
    case ErrorKind::NonNumericToken: return "NonNumericToken";
    case ErrorKind::ClassIdOutOfRange: return "ClassIdOutOfRange";
    case ErrorKind::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ErrorKind::ConfidenceOutOfRange: return "ConfidenceOutOfRange";
    case ErrorKind::InvalidClassTable: return "InvalidClassTable";
    case ErrorKind::ManifestUnreadable: return "ManifestUnreadable";
    case ErrorKind::SplitMissing: return "SplitMissing";
    case ErrorKind::LabelMissing: return "LabelMissing";
    case ErrorKind::DuplicateImageId: return "DuplicateImageId";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

namespace {

std::string compose_message(ErrorKind kind, const std::string& detail, const std::string& file,
                            int line, const std::string& token) {
  std::ostringstream os;
  os << error_name(kind) << ": " << detail;
  if (!file.empty()) os << " [" << file << (line > 0 ? ":" + std::to_string(line) : "") << "]";
  else if (line > 0) os << " [line " << line << "]";
  if (!token.empty()) os << " (token '" << token << "')";
  return os.str();
}

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

int parse_class_id(std::string_view token, const ClassTable& classes, int line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw CorpusError(ErrorKind::NonNumericToken, "class id is not an integer", {}, line_no,
                      std::string(token));
  }
  if (!classes.contains(value)) {
    throw CorpusError(ErrorKind::ClassIdOutOfRange,
                      "class id outside [0, " + std::to_string(classes.size()) + ")", {}, line_no,
                      std::string(token));
  }
  return value;
}

double parse_fraction(std::string_view token, int line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value)) {
    throw CorpusError(ErrorKind::NonNumericToken, "expected a decimal number", {}, line_no,
                      std::string(token));
  }
  return value;
}

NormBox parse_box(std::span<const std::string_view> tokens, int line_no) {
  NormBox raw{parse_fraction(tokens[0], line_no), parse_fraction(tokens[1], line_no),
              parse_fraction(tokens[2], line_no), parse_fraction(tokens[3], line_no)};
  auto box = normalize_box(raw);
  if (!box) {
    // Name the first coordinate that breaks a bound; edge overflow blames the extent.
    std::size_t bad = 3;
    if (raw.cx < 0.0 || raw.cx > 1.0) bad = 0;
    else if (raw.cy < 0.0 || raw.cy > 1.0) bad = 1;
    else if (raw.w <= 0.0 || raw.w > 1.0) bad = 2;
    else if (raw.h <= 0.0 || raw.h > 1.0) bad = 3;
    else if (raw.left() < -kEdgeTolerance || raw.right() > 1.0 + kEdgeTolerance) bad = 2;
    throw CorpusError(ErrorKind::CoordinateOutOfRange,
                      "box does not fit the unit square (need 0<=cx,cy<=1, 0<w,h<=1, edges inside)",
                      {}, line_no, std::string(tokens[bad]));
  }
  return *box;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

template <typename Record, typename Format>
void write_lines(std::span<const Record> records, const fs::path& destination, Format format) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) throw CorpusError(ErrorKind::IoFailure, "cannot open for writing", destination.string());
  for (const auto& r : records) out << format(r) << '\n';
  out.flush();
  if (!out) throw CorpusError(ErrorKind::IoFailure, "write failed", destination.string());
}

template <typename Parse>
auto read_lines(const fs::path& path, Parse parse) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(ErrorKind::IoFailure, "cannot open for reading", path.string());
  std::vector<decltype(parse(std::string_view{}, 0))> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (split_tokens(line).empty()) continue;
    try {
      records.push_back(parse(line, line_no));
    } catch (const CorpusError& e) {
      throw e.with_file(path.string());
    }
  }
  return records;
}

}  // namespace

CorpusError::CorpusError(ErrorKind kind, std::string detail, std::string file, int line,
                         std::string token)
    : std::runtime_error(compose_message(kind, detail, file, line, token)),
      kind_(kind),
      detail_(std::move(detail)),
      file_(std::move(file)),
      line_(line),
      token_(std::move(token)) {}

CorpusError CorpusError::with_file(const std::string& file) const {
  return CorpusError(kind_, detail_, file, line_, token_);
}

ClassTable::ClassTable(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw CorpusError(ErrorKind::InvalidClassTable, "class list is empty");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw CorpusError(ErrorKind::InvalidClassTable, "empty class name");
    if (!seen.insert(n).second) {
      throw CorpusError(ErrorKind::InvalidClassTable, "duplicate class name", {}, 0, n);
    }
  }
}

ClassTable kiit_mita_classes() {
  return ClassTable({"Artillery", "Missile", "Radar", "Multiple Rocket Launcher", "Soldier",
                     "Tank", "Vehicle"});
}

std::optional<NormBox> normalize_box(const NormBox& box) {
  if (!(box.cx >= 0.0 && box.cx <= 1.0 && box.cy >= 0.0 && box.cy <= 1.0)) return std::nullopt;
  if (!(box.w > 0.0 && box.w <= 1.0 && box.h > 0.0 && box.h <= 1.0)) return std::nullopt;
  double l = box.left(), r = box.right(), t = box.top(), b = box.bottom();
  if (l < -kEdgeTolerance || r > 1.0 + kEdgeTolerance || t < -kEdgeTolerance ||
      b > 1.0 + kEdgeTolerance) {
    return std::nullopt;
  }
  if (l >= 0.0 && r <= 1.0 && t >= 0.0 && b <= 1.0) return box;
  l = std::max(l, 0.0);
  r = std::min(r, 1.0);
  t = std::max(t, 0.0);
  b = std::min(b, 1.0);
  return NormBox{(l + r) / 2.0, (t + b) / 2.0, r - l, b - t};
}

GtRecord parse_annotation_line(std::string_view text, const ClassTable& classes, int line_no) {
  auto tokens = split_tokens(text);
  if (tokens.size() != 5) {
    throw CorpusError(ErrorKind::WrongTokenCount,
                      "expected 5 tokens, found " + std::to_string(tokens.size()), {}, line_no,
                      std::string(text));
  }
  GtRecord rec;
  rec.class_id = parse_class_id(tokens[0], classes, line_no);
  rec.box = parse_box(std::span(tokens).subspan(1, 4), line_no);
  return rec;
}

PredRecord parse_prediction_line(std::string_view text, const ClassTable& classes, int line_no) {
  auto tokens = split_tokens(text);
  if (tokens.size() != 6) {
    throw CorpusError(ErrorKind::WrongTokenCount,
                      "expected 6 tokens, found " + std::to_string(tokens.size()), {}, line_no,
                      std::string(text));
  }
  PredRecord rec;
  rec.class_id = parse_class_id(tokens[0], classes, line_no);
  rec.box = parse_box(std::span(tokens).subspan(1, 4), line_no);
  rec.confidence = parse_fraction(tokens[5], line_no);
  if (rec.confidence < 0.0 || rec.confidence > 1.0) {
    throw CorpusError(ErrorKind::ConfidenceOutOfRange, "confidence must lie in [0, 1]", {}, line_no,
                      std::string(tokens[5]));
  }
  return rec;
}

std::string format_annotation_line(const GtRecord& r) {
  return std::to_string(r.class_id) + " " + fixed6(r.box.cx) + " " + fixed6(r.box.cy) + " " +
         fixed6(r.box.w) + " " + fixed6(r.box.h);
}

std::string format_prediction_line(const PredRecord& r) {
  return format_annotation_line(GtRecord{r.class_id, r.box}) + " " + fixed6(r.confidence);
}

void write_annotations(std::span<const GtRecord> records, const fs::path& destination) {
  write_lines(records, destination, format_annotation_line);
}

void write_predictions(std::span<const PredRecord> records, const fs::path& destination) {
  write_lines(records, destination, format_prediction_line);
}

std::vector<GtRecord> read_annotation_file(const fs::path& path, const ClassTable& classes) {
  return read_lines(path, [&](std::string_view line, int n) {
    return parse_annotation_line(line, classes, n);
  });
}

std::vector<PredRecord> read_prediction_file(const fs::path& path, const ClassTable& classes) {
  return read_lines(path, [&](std::string_view line, int n) {
    return parse_prediction_line(line, classes, n);
  });
}

}  // namespace dronespec::corpus
