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

#include "trizone/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "trizone/error.hpp"
#include "trizone/image_io.hpp"

namespace trizone {

using nlohmann::json;

namespace {

const std::set<std::string> kEndpointNames = {"tryon",     "inpaint", "parse",
                                              "densepose", "trizone", "tryon_round2",
                                              "judge"};

[[noreturn]] void Bad(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, "config: " + message);
}

void RejectUnknownKeys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
  if (!j.is_object()) Bad(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (allowed.count(key) == 0) Bad("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T Get(const json& j, const char* key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    Bad(std::string("bad value for '") + key + "': " + e.what());
  }
}

Category CategoryFromName(const std::string& name) {
  for (Category c : {Category::kUpper, Category::kDress, Category::kLower}) {
    if (CategoryName(c) == name) return c;
  }
  Bad("unknown garment category '" + name + "'");
}

}  // namespace

RunConfig ParseConfig(const json& j) {
  RejectUnknownKeys(j,
                    {"seed", "output_dir", "corpus", "mock_grid", "mock_variants", "workers",
                     "max_in_flight", "failure_threshold", "round2_grouping", "stretch",
                     "shrink", "garment_classes", "endpoints"},
                    "config");
  RunConfig c;
  c.seed = Get<std::uint64_t>(j, "seed", c.seed);
  c.output_dir = Get<std::string>(j, "output_dir", c.output_dir.string());
  if (j.contains("corpus") && !j["corpus"].is_null()) {
    c.corpus = Get<std::string>(j, "corpus", "");
  }
  if (j.contains("mock_grid")) {
    const json& g = j["mock_grid"];
    RejectUnknownKeys(g, {"width", "height"}, "mock_grid");
    c.mock_grid = ImageGrid{Get<int>(g, "width", c.mock_grid.width),
                            Get<int>(g, "height", c.mock_grid.height)};
  }
  c.mock_variants = Get<int>(j, "mock_variants", c.mock_variants);
  c.workers = Get<int>(j, "workers", c.workers);
  c.max_in_flight = Get<int>(j, "max_in_flight", c.max_in_flight);
  c.failure_threshold = Get<double>(j, "failure_threshold", c.failure_threshold);
  if (j.contains("round2_grouping")) {
    try {
      c.round2_grouping = ParseRound2Grouping(Get<std::string>(j, "round2_grouping", ""));
    } catch (const Error& e) {
      Bad(e.what());
    }
  }
  if (j.contains("stretch")) {
    RejectUnknownKeys(j["stretch"], {"target_part"}, "stretch");
    c.stretch_target_part = Get<std::string>(j["stretch"], "target_part", c.stretch_target_part);
  }
  if (j.contains("shrink")) {
    RejectUnknownKeys(j["shrink"], {"min", "max"}, "shrink");
    c.shrink_min = Get<double>(j["shrink"], "min", c.shrink_min);
    c.shrink_max = Get<double>(j["shrink"], "max", c.shrink_max);
  }
  if (j.contains("garment_classes")) {
    RejectUnknownKeys(j["garment_classes"], {"upper", "dress", "lower"}, "garment_classes");
    for (const auto& [key, value] : j["garment_classes"].items()) {
      if (!value.is_string()) Bad("garment class names must be strings");
      c.garment_classes[CategoryFromName(key)] = value.get<std::string>();
    }
  }
  if (j.contains("endpoints")) {
    if (!j["endpoints"].is_object()) Bad("endpoints must be an object");
    for (const auto& [name, e] : j["endpoints"].items()) {
      if (kEndpointNames.count(name) == 0) Bad("unknown endpoint '" + name + "'");
      RejectUnknownKeys(e,
                        {"base_url", "timeout_seconds", "retry_limit", "auth_token",
                         "backoff_seconds", "round1_trained"},
                        "endpoints." + name);
      EndpointConfig ec;
      ec.endpoint.base_url = Get<std::string>(e, "base_url", "");
      ec.endpoint.timeout_seconds = Get<double>(e, "timeout_seconds", ec.endpoint.timeout_seconds);
      ec.endpoint.retry_limit = Get<int>(e, "retry_limit", ec.endpoint.retry_limit);
      ec.endpoint.backoff_seconds = Get<double>(e, "backoff_seconds", ec.endpoint.backoff_seconds);
      if (e.contains("auth_token") && !e["auth_token"].is_null()) {
        ec.endpoint.auth_token = Get<std::string>(e, "auth_token", "");
      }
      ec.round1_trained = Get<bool>(e, "round1_trained", false);
      c.endpoints[name] = ec;
    }
  }
  return c;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) Bad(path.string() + " is not valid JSON");
  RunConfig config = ParseConfig(j);
  // Relative paths in a config file are relative to the file itself.
  const auto base = path.parent_path();
  if (config.corpus && config.corpus->is_relative()) config.corpus = base / *config.corpus;
  return config;
}

json ConfigToJson(const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir.string();
  j["corpus"] = c.corpus ? json(c.corpus->string()) : json(nullptr);
  j["mock_grid"] = {{"width", c.mock_grid.width}, {"height", c.mock_grid.height}};
  j["mock_variants"] = c.mock_variants;
  j["workers"] = c.workers;
  j["max_in_flight"] = c.max_in_flight;
  j["failure_threshold"] = c.failure_threshold;
  j["round2_grouping"] = std::string(Round2GroupingName(c.round2_grouping));
  j["stretch"] = {{"target_part", c.stretch_target_part}};
  j["shrink"] = {{"min", c.shrink_min}, {"max", c.shrink_max}};
  json classes = json::object();
  for (const auto& [cat, name] : c.garment_classes) classes[std::string(CategoryName(cat))] = name;
  j["garment_classes"] = classes;
  json endpoints = json::object();
  for (const auto& [name, ec] : c.endpoints) {
    endpoints[name] = {{"base_url", ec.endpoint.base_url},
                       {"timeout_seconds", ec.endpoint.timeout_seconds},
                       {"retry_limit", ec.endpoint.retry_limit},
                       {"backoff_seconds", ec.endpoint.backoff_seconds},
                       {"auth_token", ec.endpoint.auth_token ? json(*ec.endpoint.auth_token)
                                                             : json(nullptr)},
                       {"round1_trained", ec.round1_trained}};
  }
  j["endpoints"] = endpoints;
  return j;
}

void ApplyEnvironmentOverrides(RunConfig& config, const char* (*getenv_fn)(const char*)) {
  auto get = [&](const std::string& name) -> const char* {
    return getenv_fn != nullptr ? getenv_fn(name.c_str()) : std::getenv(name.c_str());
  };
  for (const std::string& name : kEndpointNames) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    const std::string prefix = "TRIZONE_" + upper + "_";
    const char* url = get(prefix + "URL");
    const char* token = get(prefix + "TOKEN");
    const char* timeout = get(prefix + "TIMEOUT");
    if (url == nullptr && config.endpoints.count(name) == 0) continue;
    EndpointConfig& ec = config.endpoints[name];
    if (url != nullptr) ec.endpoint.base_url = url;
    if (token != nullptr) ec.endpoint.auth_token = std::string(token);
    if (timeout != nullptr) {
      try {
        ec.endpoint.timeout_seconds = std::stod(timeout);
      } catch (const std::exception&) {
        Bad(prefix + "TIMEOUT is not a number");
      }
    }
  }
}

void ValidateConfig(const RunConfig& c) {
  MakeGrid(c.mock_grid.width, c.mock_grid.height);
  if (c.mock_variants < 1) Bad("mock_variants must be >= 1");
  if (c.workers < 1) Bad("workers must be >= 1");
  if (c.max_in_flight < 1) Bad("max_in_flight must be >= 1");
  if (!(c.failure_threshold >= 0.0 && c.failure_threshold <= 1.0)) {
    Bad("failure_threshold must lie in [0, 1]");
  }
  ShiftPolicy shrink;
  shrink.shrink_min = c.shrink_min;
  shrink.shrink_max = c.shrink_max;
  try {
    ValidateShrinkRange(shrink);
  } catch (const Error& e) {
    Bad(e.what());
  }
  if (c.stretch_target_part.empty()) Bad("stretch.target_part is empty");
  for (const auto& [name, ec] : c.endpoints) {
    try {
      ValidateEndpoint(ec.endpoint);
    } catch (const Error& e) {
      Bad("endpoint '" + name + "': " + e.what());
    }
  }
}

std::string ConfigFingerprint(const RunConfig& c, bool mock) {
  json j;
  j["mock"] = mock;
  j["seed"] = c.seed;
  j["corpus"] = c.corpus ? json(c.corpus->filename().string()) : json(nullptr);
  j["mock_grid"] = {c.mock_grid.width, c.mock_grid.height};
  j["mock_variants"] = c.mock_variants;
  j["round2_grouping"] = std::string(Round2GroupingName(c.round2_grouping));
  j["stretch_target_part"] = c.stretch_target_part;
  j["shrink"] = {c.shrink_min, c.shrink_max};
  json classes = json::object();
  for (const auto& [cat, name] : c.garment_classes) classes[std::string(CategoryName(cat))] = name;
  j["garment_classes"] = classes;
  if (!mock) {
    json endpoints = json::object();
    for (const auto& [name, ec] : c.endpoints) {
      endpoints[name] = {ec.endpoint.base_url, ec.round1_trained};
    }
    j["endpoints"] = endpoints;
  }
  return Sha256Hex(j.dump());
}

}  // namespace trizone
