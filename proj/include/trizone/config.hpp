/* Copyright 2026 The Trizone Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef TRIZONE_CONFIG_HPP_
#define TRIZONE_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "trizone/garment.hpp"
#include "trizone/http_backend.hpp"
#include "trizone/maskadjust.hpp"
#include "trizone/maskcore.hpp"
#include "trizone/zonealgebra.hpp"

namespace trizone {

struct EndpointConfig {
  BackendEndpoint endpoint;
  bool round1_trained = false;
};

// Everything a construction run depends on. Loaded from a JSON file (see
// docs/config.md); every field has a default.
struct RunConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "out";
  std::optional<std::filesystem::path> corpus;

  // Procedural corpus used when no corpus file is given.
  ImageGrid mock_grid{24, 32};
  int mock_variants = 2;

  int workers = 1;
  int max_in_flight = 4;  // per endpoint
  double failure_threshold = 0.10;

  Round2Grouping round2_grouping = Round2Grouping::kIntersectUnion;
  std::string stretch_target_part = "upper_leg";
  double shrink_min = 0.15;
  double shrink_max = 0.45;

  // Parsing class holding garments of each category.
  std::map<Category, std::string> garment_classes = {
      {Category::kUpper, "upper"}, {Category::kDress, "dress"}, {Category::kLower, "lower"}};

  // Keys: tryon, inpaint, parse, densepose, trizone, tryon_round2, judge.
  std::map<std::string, EndpointConfig> endpoints;
};

// Throws kInvalidArgument on unknown keys, bad types or out-of-range values.
RunConfig ParseConfig(const nlohmann::json& j);
RunConfig LoadConfig(const std::filesystem::path& path);
nlohmann::json ConfigToJson(const RunConfig& config);

// TRIZONE_<NAME>_URL, TRIZONE_<NAME>_TOKEN and TRIZONE_<NAME>_TIMEOUT override
// the endpoint named <name> (upper-cased), creating it when only the URL is
// set. `getenv` is injectable for tests.
void ApplyEnvironmentOverrides(RunConfig& config,
                               const char* (*getenv_fn)(const char*) = nullptr);

void ValidateConfig(const RunConfig& config);

// SHA-256 over the settings that influence manifest content. Worker counts,
// output location, timeouts and tokens are excluded.
std::string ConfigFingerprint(const RunConfig& config, bool mock);

}  // namespace trizone

#endif  // TRIZONE_CONFIG_HPP_
