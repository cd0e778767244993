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

#include "dronespec/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "dronespec/corpus.hpp"
#include "dronespec/corpus_transform.hpp"
#include "dronespec/eval.hpp"
#include "dronespec/image_io.hpp"
#include "dronespec/oracle.hpp"
#include "dronespec/report.hpp"

namespace dronespec::cli {

namespace fs = std::filesystem;

namespace {

// Raised for malformed positional arguments that CLI11 cannot check itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  fs::path manifest;
  std::string split = "test";
  std::string modality;
  fs::path params;
  std::uint64_t seed = kDefaultSeed;
  fs::path out;
  fs::path preds;
  std::string format = "markdown";
  std::string interp = "101";
  int workers = 0;
  double conf = 0.25;
  double iou = 0.45;
  int trials = 1000;
  std::vector<std::string> entries;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("IoFailure: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("IoFailure: cannot write " + path.string());
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

int do_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto manifest = corpus::load_manifest(o.manifest);
  const auto report = corpus::validate_dataset(manifest);
  out << "images " << report.image_count << "\n";
  out << "labels " << report.label_count << "\n";
  for (const auto& [split, n] : report.per_split_images) out << "split " << split << " " << n << "\n";
  for (std::size_t c = 0; c < report.per_class_counts.size(); ++c) {
    out << "class " << c << " " << manifest.class_table.name(static_cast<int>(c)) << " "
        << report.per_class_counts[c] << "\n";
  }
  for (const auto& v : report.violations) {
    err << v.file;
    if (v.line > 0) err << ":" << v.line;
    err << ": " << v.reason << "\n";
  }
  if (!report.valid()) {
    err << "corpus invalid: " << report.violations.size() << " violation(s)\n";
    return kExitDomainError;
  }
  out << "ok\n";
  return kExitOk;
}

int do_transform(const Options& o, std::ostream& out, std::ostream&) {
  const auto manifest = corpus::load_manifest(o.manifest);
  const auto modality = spectral::parse_modality(o.modality);
  const auto params = o.params.empty() ? spectral::TransformParams{} : spectral::load_transform_params(o.params);
  const auto report = spectral::transform_corpus(manifest, o.split, modality, params,
                                                 TransformSeed{o.seed}, o.out, o.workers);
  out << "transformed " << report.image_count << " image(s), " << report.label_count << " label(s) "
      << spectral::modality_key(modality) << " seed " << o.seed << " -> " << o.out.string() << "\n";
  return kExitOk;
}

eval::GtSet load_ground_truth(const corpus::DatasetManifest& manifest, std::string_view split) {
  eval::GtSet gts;
  for (auto& item : corpus::load_split(manifest, split)) gts.emplace(item.image_id, std::move(item.records));
  return gts;
}

int do_evaluate(const Options& o, std::ostream& out, std::ostream&) {
  const auto manifest = corpus::load_manifest(o.manifest);
  const auto gts = load_ground_truth(manifest, o.split);
  const auto preds = corpus::load_prediction_dir(o.preds, manifest.class_table);
  eval::MatchConfig config;
  config.cm_conf = o.conf;
  config.cm_iou = o.iou;
  config.interpolation = o.interp == "all" ? eval::Interpolation::AllPoints : eval::Interpolation::Point101;
  const auto summary = eval::evaluate_split(gts, preds, manifest.class_table, config);
  if (!o.out.empty()) write_text(o.out, eval::summary_to_json(summary));
  out << "map50 " << fixed(summary.map50, 6) << "\n"
      << "map50_95 " << fixed(summary.map50_95, 6) << "\n"
      << "precision " << fixed(summary.precision, 6) << "\n"
      << "recall " << fixed(summary.recall, 6) << "\n"
      << "f1 " << fixed(summary.f1, 6) << "\n"
      << "operating_confidence " << fixed(summary.operating_confidence, 6) << "\n";
  return kExitOk;
}

// NAME=SUMMARY.json,TIMING.jsonl[,TRAINING_H]
report::ModalityResult parse_entry(const std::string& entry) {
  const auto eq = entry.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError("compare entry '" + entry + "': expected NAME=SUMMARY.json,TIMING.jsonl[,TRAINING_H]");
  }
  std::vector<std::string> parts;
  std::stringstream rest(entry.substr(eq + 1));
  for (std::string part; std::getline(rest, part, ',');) parts.push_back(part);
  if (parts.size() < 2 || parts.size() > 3 || parts[0].empty() || parts[1].empty()) {
    throw UsageError("compare entry '" + entry + "': expected NAME=SUMMARY.json,TIMING.jsonl[,TRAINING_H]");
  }
  report::ModalityResult r;
  r.modality = entry.substr(0, eq);
  r.scores = report::DetectionScores::from_headline(eval::parse_summary_headline(read_text(parts[0])));
  r.timing = report::aggregate_timing(report::load_timing_file(parts[1]));
  if (parts.size() == 3) {
    double hours = 0.0;
    const auto& s = parts[2];
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), hours);
    if (ec != std::errc{} || ptr != s.data() + s.size() || hours < 0.0) {
      throw UsageError("compare entry '" + entry + "': bad training hours '" + s + "'");
    }
    r.training_time_h = hours;
  }
  return r;
}

int do_compare(const Options& o, std::ostream& out, std::ostream&) {
  const auto format = report::parse_format(o.format);
  std::vector<report::ModalityResult> results;
  for (const auto& e : o.entries) results.push_back(parse_entry(e));
  const auto text = report::emit(report::compose_comparison(std::move(results)), format);
  if (o.out.empty()) out << text;
  else write_text(o.out, text);
  return kExitOk;
}

int do_render(const Options& o, std::ostream& out, std::ostream&) {
  const auto manifest = corpus::load_manifest(o.manifest);
  const auto items = corpus::load_split(manifest, o.split);
  eval::PredSet preds;
  if (!o.preds.empty()) preds = corpus::load_prediction_dir(o.preds, manifest.class_table);
  fs::create_directories(o.out);
  for (const auto& item : items) {
    std::vector<corpus::PredRecord> boxes;
    double threshold = o.conf;
    if (o.preds.empty()) {
      // Ground truth drawn as certain detections.
      for (const auto& g : item.records) boxes.push_back({g.class_id, g.box, 1.0});
      threshold = 0.0;
    } else if (auto it = preds.find(item.image_id); it != preds.end()) {
      boxes = it->second;
    }
    const auto img = io::read_image(item.image_path);
    io::write_png(o.out / (item.image_id + ".png"),
                  report::render_detections(img, boxes, manifest.class_table, threshold));
  }
  out << "rendered " << items.size() << " image(s) -> " << o.out.string() << "\n";
  return kExitOk;
}

int do_oracle(const Options& o, std::ostream& out, std::ostream& err) {
  const auto report = eval::oracle::run_oracle_suite(o.seed, o.trials);
  out << "trials " << report.trials << "\n"
      << "ap_mismatches " << report.ap_mismatches << "\n"
      << "map_mismatches " << report.map_mismatches << "\n"
      << "monotonicity_violations " << report.monotonicity_violations << "\n"
      << "max_abs_diff " << report.max_abs_diff << "\n";
  for (const auto& f : report.failures) err << f << "\n";
  out << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? kExitOk : kExitDomainError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Spectral-modality corpus tools and detection evaluation", "dronespec"};
  app.require_subcommand(1, 1);

  auto* validate = app.add_subcommand("validate", "Check a corpus against its manifest");
  validate->add_option("--manifest", o.manifest, "Corpus manifest (JSON)")->required();

  auto* transform = app.add_subcommand("transform", "Apply one modality to every image of a split");
  transform->add_option("--manifest", o.manifest, "Corpus manifest (JSON)")->required();
  transform->add_option("--split", o.split, "train, val or test")->capture_default_str();
  transform->add_option("--modality", o.modality, "gray, thermal, night or obscura")->required();
  transform->add_option("--params", o.params, "Transform parameter file (JSON)");
  transform->add_option("--seed", o.seed, "Global seed")->capture_default_str();
  transform->add_option("--out", o.out, "Output directory")->required();
  transform->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->capture_default_str();

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against a split");
  evaluate->add_option("--manifest", o.manifest, "Corpus manifest (JSON)")->required();
  evaluate->add_option("--split", o.split, "train, val or test")->capture_default_str();
  evaluate->add_option("--preds", o.preds, "Directory of <image_id>.txt prediction files")->required();
  evaluate->add_option("--out", o.out, "Summary JSON path");
  evaluate->add_option("--conf", o.conf, "Confusion-matrix confidence cut")->capture_default_str();
  evaluate->add_option("--iou", o.iou, "Confusion-matrix IoU cut")->capture_default_str();
  evaluate->add_option("--interp", o.interp, "AP interpolation: 101 or all")
      ->check(CLI::IsMember({"101", "all"}))
      ->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Rank modalities from summaries and timing files");
  compare->add_option("entries", o.entries, "NAME=SUMMARY.json,TIMING.jsonl[,TRAINING_H]")
      ->required()
      ->expected(2, -1);
  compare->add_option("--format", o.format, "markdown, csv or json")
      ->check(CLI::IsMember({"markdown", "md", "csv", "json"}))
      ->capture_default_str();
  compare->add_option("--out", o.out, "Write the table here instead of stdout");

  auto* render = app.add_subcommand("render", "Draw boxes onto the images of a split");
  render->add_option("--manifest", o.manifest, "Corpus manifest (JSON)")->required();
  render->add_option("--split", o.split, "train, val or test")->capture_default_str();
  render->add_option("--preds", o.preds, "Prediction directory (ground truth when omitted)");
  render->add_option("--out", o.out, "Output directory")->required();
  render->add_option("--conf", o.conf, "Minimum confidence drawn")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Cross-check the evaluator against a brute-force reference");
  oracle->add_option("--seed", o.seed, "Seed for the random micro-corpora")->capture_default_str();
  oracle->add_option("--trials", o.trials, "Number of micro-corpora")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsageError;
  }

  try {
    if (validate->parsed()) return do_validate(o, out, err);
    if (transform->parsed()) return do_transform(o, out, err);
    if (evaluate->parsed()) return do_evaluate(o, out, err);
    if (compare->parsed()) return do_compare(o, out, err);
    if (render->parsed()) return do_render(o, out, err);
    if (oracle->parsed()) return do_oracle(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const io::ImageIoError& e) {
    err << "ImageIoError: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const fs::filesystem_error& e) {
    err << "IoFailure: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitUsageError;
}

}  // namespace dronespec::cli
