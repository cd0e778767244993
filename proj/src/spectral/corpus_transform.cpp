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
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dronespec/corpus_transform.hpp"
#include "dronespec/image_io.hpp"

namespace dronespec::spectral {

using nlohmann::json;
namespace fs = std::filesystem;

Modality parse_modality(std::string_view name) {
  if (name == "gray") return Modality::Gray;
  if (name == "thermal") return Modality::Thermal;
  if (name == "night") return Modality::Night;
  if (name == "obscura") return Modality::Obscura;
  throw SpectralError(ErrorKind::InvalidParameter,
                      "unknown modality '" + std::string(name) + "' (gray, thermal, night, obscura)");
}

std::string_view modality_key(Modality m) {
  switch (m) {
    case Modality::Gray: return "gray";
    case Modality::Thermal: return "thermal";
    case Modality::Night: return "night";
    case Modality::Obscura: return "obscura";
  }
  return "gray";
}

std::string_view modality_display_name(Modality m) {
  switch (m) {
    case Modality::Gray: return "Gray Scale";
    case Modality::Thermal: return "Thermal Vision";
    case Modality::Night: return "Night Vision";
    case Modality::Obscura: return "ObscuraVision";
  }
  return "Gray Scale";
}

TransformParams parse_transform_params(std::string_view json_text) {
  TransformParams p;
  json doc;
  try {
    doc = json::parse(json_text);
    if (!doc.is_object()) throw SpectralError(ErrorKind::InvalidParameter, "params must be a JSON object");
    if (auto n = doc.find("night"); n != doc.end()) {
      p.night.gain = n->value("gain", p.night.gain);
      p.night.bias = n->value("bias", p.night.bias);
      if (auto w = n->find("weights"); w != n->end()) {
        if (!w->is_array() || w->size() != 3) {
          throw SpectralError(ErrorKind::InvalidParameter, "night.weights must hold 3 numbers");
        }
        p.night.weight_r = (*w)[0].get<double>();
        p.night.weight_g = (*w)[1].get<double>();
        p.night.weight_b = (*w)[2].get<double>();
      }
    }
    if (auto o = doc.find("obscura"); o != doc.end()) {
      auto& ob = p.obscura;
      ob.blur_limit = o->value("blur_limit", ob.blur_limit);
      ob.fog_coeff = o->value("fog_coeff", ob.fog_coeff);
      ob.cb_limit = o->value("cb_limit", ob.cb_limit);
      ob.alpha = o->value("alpha", ob.alpha);
      ob.beta = o->value("beta", ob.beta);
      ob.gamma = o->value("gamma", ob.gamma);
      ob.normalization.blur_divisor = o->value("blur_divisor", ob.normalization.blur_divisor);
      const auto source = o->value("fog_source", std::string("configured"));
      if (source == "configured") ob.normalization.fog_source = FogMagnitude::Configured;
      else if (source == "realized") ob.normalization.fog_source = FogMagnitude::Realized;
      else throw SpectralError(ErrorKind::InvalidParameter, "fog_source must be configured or realized");
    }
  } catch (const json::exception& e) {
    throw SpectralError(ErrorKind::InvalidParameter, std::string("params file: ") + e.what());
  }
  p.night.validate();
  p.obscura.validate();
  return p;
}

TransformParams load_transform_params(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpectralError(ErrorKind::InvalidParameter, "cannot open params file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_transform_params(buf.str());
}

namespace {

void copy_bytes(const fs::path& from, const fs::path& to) {
  std::error_code ec;
  fs::copy_file(from, to, fs::copy_options::overwrite_existing, ec);
  if (ec) throw corpus::CorpusError(corpus::ErrorKind::IoFailure, "label copy failed: " + ec.message(), from.string());
}

TransformRow transform_one(const corpus::ImageEntry& entry, Modality modality,
                           const TransformParams& params, TransformSeed seed,
                           const fs::path& image_dir, const fs::path& label_dir) {
  TransformRow row;
  row.image_id = entry.image_id;
  row.output_path = image_dir / (entry.image_id + ".png");
  const ImageBuffer src = io::read_image(entry.image_path);
  switch (modality) {
    case Modality::Gray:
      io::write_png(row.output_path, to_grayscale(src));
      break;
    case Modality::Thermal:
      io::write_png(row.output_path, thermal_transform(src));
      break;
    case Modality::Night:
      io::write_png(row.output_path, night_vision_transform(src, params.night));
      break;
    case Modality::Obscura: {
      auto result = obscura_transform(src, params.obscura, seed, entry.image_id);
      io::write_png(row.output_path, result.image);
      row.severity = result.severity.value;
      row.draw = result.draw;
      break;
    }
  }
  copy_bytes(entry.label_path, label_dir / (entry.image_id + ".txt"));
  return row;
}

}  // namespace

TransformReport transform_corpus(const corpus::DatasetManifest& manifest, std::string_view split,
                                 Modality modality, const TransformParams& params,
                                 TransformSeed seed, const fs::path& out_dir, int workers) {
  params.night.validate();
  params.obscura.validate();
  const auto start = std::chrono::steady_clock::now();

  const auto entries = corpus::list_split_images(manifest, split);
  for (const auto& e : entries) {
    if (!fs::is_regular_file(e.label_path)) {
      throw corpus::CorpusError(corpus::ErrorKind::LabelMissing, "no label file for image",
                                e.label_path.string(), 0, e.image_id);
    }
  }

  const fs::path image_dir = out_dir / "images";
  const fs::path label_dir = out_dir / "labels";
  std::error_code ec;
  fs::create_directories(image_dir, ec);
  fs::create_directories(label_dir, ec);
  if (!fs::is_directory(image_dir) || !fs::is_directory(label_dir)) {
    throw corpus::CorpusError(corpus::ErrorKind::IoFailure, "cannot create output directories",
                              out_dir.string());
  }

  std::vector<TransformRow> rows(entries.size());
  std::vector<std::exception_ptr> errors(entries.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      try {
        rows[i] = transform_one(entries[i], modality, params, seed, image_dir, label_dir);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t n_workers = workers > 0 ? static_cast<std::size_t>(workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::max<std::size_t>(1, std::min(n_workers, entries.size()));
  if (n_workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(work);
  }
  // Report the failure of the lowest-index image so the error is independent of scheduling.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  TransformReport report;
  report.split = std::string(split);
  report.modality = modality;
  report.seed = seed.global_seed;
  report.image_count = static_cast<std::int64_t>(rows.size());
  report.label_count = static_cast<std::int64_t>(rows.size());
  report.rows = std::move(rows);

  corpus::DatasetManifest out_manifest;
  out_manifest.class_table = manifest.class_table;
  out_manifest.splits[report.split] = corpus::SplitPaths{"images", "labels"};
  {
    std::ofstream m(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
    m << corpus::manifest_to_json(out_manifest);
    if (!m) throw corpus::CorpusError(corpus::ErrorKind::IoFailure, "cannot write manifest", out_dir.string());
  }
  {
    std::ofstream r(out_dir / "transform_report.json", std::ios::binary | std::ios::trunc);
    r << report_to_json(report, params, out_dir);
    if (!r) throw corpus::CorpusError(corpus::ErrorKind::IoFailure, "cannot write report", out_dir.string());
  }

  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string report_to_json(const TransformReport& report, const TransformParams& params,
                           const fs::path& relative_to, bool include_wall_time) {
  json doc;
  doc["split"] = report.split;
  doc["modality"] = std::string(modality_key(report.modality));
  doc["seed"] = report.seed;
  doc["image_count"] = report.image_count;
  doc["label_count"] = report.label_count;
  if (report.modality == Modality::Obscura) {
    const auto& ob = params.obscura;
    doc["obscura"] = {
        {"blur_limit", ob.blur_limit},
        {"fog_coeff", ob.fog_coeff},
        {"cb_limit", ob.cb_limit},
        {"weights", {ob.alpha, ob.beta, ob.gamma}},
        {"severity_normalization",
         {{"m_b", "(kernel_len - 1) / " + json(ob.normalization.blur_divisor).dump()},
          {"f_g", ob.normalization.fog_source == FogMagnitude::Configured
                      ? "configured fog_coeff"
                      : "realized fog coefficient"},
          {"c_b", "configured cb_limit"},
          {"note", "one consistent reading of the 25% low-level interference figure; not "
                   "decomposed at the source"}}}};
  } else if (report.modality == Modality::Night) {
    doc["night"] = {{"gain", params.night.gain},
                    {"bias", params.night.bias},
                    {"weights", {params.night.weight_r, params.night.weight_g, params.night.weight_b}}};
  }
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["image_id"] = r.image_id;
    row["modality"] = std::string(modality_key(report.modality));
    if (r.severity) row["severity"] = *r.severity;
    else row["severity"] = "-";
    if (r.draw) {
      row["draw"] = {{"kernel_len", r.draw->kernel_len},
                     {"angle_deg", r.draw->angle_deg},
                     {"fog_coeff", r.draw->fog_coeff},
                     {"contrast_factor", r.draw->contrast_factor},
                     {"brightness_shift", r.draw->brightness_shift}};
    }
    row["output"] = (relative_to.empty() ? r.output_path : r.output_path.lexically_relative(relative_to))
                        .generic_string();
    rows.push_back(std::move(row));
  }
  doc["images"] = std::move(rows);
  if (include_wall_time) doc["wall_time_ms"] = report.wall_time_ms;
  return doc.dump(2) + "\n";
}

}  // namespace dronespec::spectral
