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

/// @file seed.hpp
/// @brief Per-image random streams that depend only on (global seed, image id).
///
/// Draws are built from raw std::mt19937_64 output rather than the standard
/// distributions, whose algorithms differ between library vendors.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dronespec {

inline constexpr std::uint64_t kDefaultSeed = 20250001;

struct TransformSeed {
  std::uint64_t global_seed = kDefaultSeed;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stream seed for one image: splitmix64(global_seed ^ fnv1a64(image_id)).
std::uint64_t derive_stream_seed(TransformSeed seed, std::string_view image_id) noexcept;

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform in [lo, hi); returns lo when lo == hi (still consuming a draw).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi], unbiased (rejection sampling).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dronespec
