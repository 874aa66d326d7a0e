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

#ifndef TRIZONE_EVALKIT_HPP_
#define TRIZONE_EVALKIT_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "trizone/backends.hpp"
#include "trizone/garment.hpp"
#include "trizone/maskcore.hpp"

namespace trizone {

// model | garment | result side by side. Shorter panels are padded with
// white rows at the bottom; nothing is rescaled.
RgbImage SpliceTriptych(const RgbImage& model, const RgbImage& garment, const RgbImage& result);

// Nearest-neighbour resize to `height` rows, keeping the aspect ratio
// (width rounded, at least 1). For judges with input-size limits.
RgbImage ResizeToHeight(const RgbImage& image, int height);

// The judge instruction, verbatim (including its typographic apostrophes).
std::string_view AccQwenPrompt();

struct EvalCase {
  std::string id;
  RgbImage model_image;
  RgbImage garment_image;
  RgbImage result_image;
  GarmentSpec pc;  // garment being tried on
  GarmentSpec pg;  // garment worn in the model image
};

using CategoryPair = std::pair<GarmentSpec, GarmentSpec>;  // (pc, pg)

struct CategoryTally {
  std::size_t judged = 0;
  std::size_t reasonable = 0;
  std::optional<double> fraction() const;
};

struct AccReport {
  std::size_t total = 0;
  std::size_t judged = 0;
  std::size_t reasonable = 0;
  std::size_t failures = 0;
  std::optional<double> acc;  // undefined when nothing was judged
  std::map<CategoryPair, CategoryTally> per_category;
  // Failure messages by case id.
  std::map<std::string, std::string> failure_reasons;
};

struct EvalOptions {
  int max_in_flight = 4;
  // When set, every panel is resized to this height before splicing.
  std::optional<int> panel_height;
};

// Judges every case (concurrently, up to max_in_flight), using the case id
// as the call key. Timeouts, transport errors and unparseable replies count
// as failures and are left out of the denominator. Throws
// kInvalidArgument on duplicate ids.
AccReport EvaluateAcc(const std::vector<EvalCase>& cases, JudgeBackend& judge,
                      const EvalOptions& options = {});

// Cases file: JSON lines {"id","model","garment","result","pc","pg"} with
// image paths relative to the file.
std::vector<EvalCase> LoadEvalCases(const std::filesystem::path& path);

// Judge script: one "<case id> <reply text>" per line; blank lines and lines
// starting with '#' are skipped.
std::map<std::string, std::string> ParseJudgeScript(std::string_view text);

std::string FormatAccReport(const AccReport& report);
nlohmann::ordered_json AccReportToJson(const AccReport& report);

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

// Mean SSIM of the BT.601 luminance over all fully contained Gaussian
// windows. Throws kGridMismatch, or kInvalidArgument when the window does
// not fit inside the image.
double Ssim(const RgbImage& a, const RgbImage& b, const SsimOptions& options = {});

// BT.601 luma, unrounded.
double Luminance(Rgb px);

// Normalized 1-D Gaussian taps.
std::vector<double> GaussianTaps(int window, double sigma);

}  // namespace trizone

#endif  // TRIZONE_EVALKIT_HPP_
