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

/// @file corpus_transform.hpp
/// @brief Applies one modality to every image of a split.
///
/// Output layout under `out_dir`:
///   images/<image_id>.png      transformed image (gray modality: 1-channel PNG)
///   labels/<image_id>.txt      byte copy of the source label file
///   manifest.json              manifest declaring the output as the same split
///   transform_report.json      per-image rows (no wall time, so the tree is reproducible)

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dronespec/corpus.hpp"
#include "dronespec/seed.hpp"
#include "dronespec/spectral.hpp"

namespace dronespec::spectral {

enum class Modality { Gray, Thermal, Night, Obscura };

/// "gray" | "thermal" | "night" | "obscura"; throws InvalidParameter otherwise.
Modality parse_modality(std::string_view name);
std::string_view modality_key(Modality m);
/// Table display name, e.g. "Night Vision".
std::string_view modality_display_name(Modality m);

struct TransformParams {
  NightVisionParams night;
  ObscuraParams obscura;
};

/// JSON params file. Every field is optional and falls back to the defaults:
///
///   { "night":   {"gain": 1.2, "bias": 30, "weights": [0.1, 1.0, 0.1]},
///     "obscura": {"blur_limit": 3, "fog_coeff": 0.1, "cb_limit": 0.1,
///                 "alpha": 1, "beta": 1, "gamma": 1,
///                 "blur_divisor": 40, "fog_source": "configured" | "realized"} }
TransformParams load_transform_params(const std::filesystem::path& path);
TransformParams parse_transform_params(std::string_view json_text);

struct TransformRow {
  std::string image_id;
  std::optional<double> severity;
  std::optional<ObscuraDraw> draw;
  std::filesystem::path output_path;
};

struct TransformReport {
  std::string split;
  Modality modality = Modality::Gray;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t image_count = 0;
  std::int64_t label_count = 0;
  std::vector<TransformRow> rows;
  double wall_time_ms = 0.0;
};

/// Transforms and writes every image of `split`, copying label files
/// byte-for-byte. `workers` <= 0 means hardware concurrency. Output bytes do
/// not depend on the worker count.
TransformReport transform_corpus(const corpus::DatasetManifest& manifest, std::string_view split,
                                 Modality modality, const TransformParams& params,
                                 TransformSeed seed, const std::filesystem::path& out_dir,
                                 int workers = 0);

/// Structured-text form of the report. Output paths are written relative to
/// `relative_to` when given. Wall time is omitted unless requested.
std::string report_to_json(const TransformReport& report, const TransformParams& params,
                           const std::filesystem::path& relative_to = {},
                           bool include_wall_time = false);

}  // namespace dronespec::spectral
