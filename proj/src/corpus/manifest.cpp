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
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dronespec/corpus.hpp"

namespace dronespec::corpus {

using nlohmann::json;

namespace {

[[noreturn]] void unreadable(const fs::path& path, const std::string& why) {
  throw CorpusError(ErrorKind::ManifestUnreadable, why, path.string());
}

bool known_split(std::string_view name) {
  return std::find(std::begin(kSplitNames), std::end(kSplitNames), name) != std::end(kSplitNames);
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

DatasetManifest load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) unreadable(path, "cannot open manifest");
  std::stringstream buf;
  buf << in.rdbuf();

  // nlohmann keeps the last of duplicate keys silently; duplicate split names
  // must be rejected, so watch keys directly under "splits".
  std::string depth1_key;
  std::set<std::string> split_keys;
  bool duplicate = false;
  std::string duplicate_name;
  json::parser_callback_t watch = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key) {
      if (depth == 1) depth1_key = parsed.get<std::string>();
      if (depth == 2 && depth1_key == "splits") {
        auto name = parsed.get<std::string>();
        if (!split_keys.insert(name).second) {
          duplicate = true;
          duplicate_name = name;
        }
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(buf.str(), watch);
  } catch (const json::exception& e) {
    unreadable(path, std::string("malformed JSON: ") + e.what());
  }
  if (duplicate) unreadable(path, "split '" + duplicate_name + "' declared twice");
  if (!doc.is_object()) unreadable(path, "top level must be an object");

  auto classes = doc.find("classes");
  if (classes == doc.end() || !classes->is_array()) unreadable(path, "missing 'classes' list");
  std::vector<std::string> names;
  for (const auto& c : *classes) {
    if (!c.is_string()) unreadable(path, "class names must be strings");
    names.push_back(c.get<std::string>());
  }

  DatasetManifest manifest;
  try {
    manifest.class_table = ClassTable(std::move(names));
  } catch (const CorpusError& e) {
    throw e.with_file(path.string());
  }
  manifest.source = path;

  auto splits = doc.find("splits");
  if (splits == doc.end() || !splits->is_object()) unreadable(path, "missing 'splits' object");
  const fs::path base = path.parent_path();
  for (const auto& [name, entry] : splits->items()) {
    if (!known_split(name)) unreadable(path, "unknown split '" + name + "' (train, val, test)");
    if (!entry.is_object() || !entry.contains("images") || !entry.contains("labels") ||
        !entry["images"].is_string() || !entry["labels"].is_string()) {
      unreadable(path, "split '" + name + "' needs string fields 'images' and 'labels'");
    }
    manifest.splits[name] = SplitPaths{resolve(base, entry["images"].get<std::string>()),
                                       resolve(base, entry["labels"].get<std::string>())};
  }
  return manifest;
}

std::string manifest_to_json(const DatasetManifest& manifest) {
  json doc;
  doc["classes"] = manifest.class_table.names();
  doc["splits"] = json::object();
  for (const auto& [name, paths] : manifest.splits) {
    doc["splits"][name] = {{"images", paths.images.generic_string()},
                           {"labels", paths.labels.generic_string()}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace dronespec::corpus
