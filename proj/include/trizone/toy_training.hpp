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

#ifndef TRIZONE_TOY_TRAINING_HPP_
#define TRIZONE_TOY_TRAINING_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "trizone/flowtoy.hpp"
#include "trizone/maskcore.hpp"

namespace trizone {

// [P_c, P_g, G_g, M3g] held in memory.
struct ToyQuadruplet {
  std::string id;
  RgbImage p_c;
  RgbImage p_g;
  RgbImage g_g;
  TriZoneMask m3g;
};

// Runs the mock construction pipeline in memory on `grid` and keeps the
// first `count` records with status ok, in plan order.
std::vector<ToyQuadruplet> MakeToyDataset(std::size_t count, const ImageGrid& grid,
                                          std::uint64_t seed);

// Loads the ok records of a manifest written by the pipeline.
std::vector<ToyQuadruplet> LoadToyDataset(const std::filesystem::path& manifest);

struct ToyTrainConfig {
  std::uint64_t seed = 0;
  std::size_t steps = 300;
  double holdout_fraction = 0.1;

  // Stage 1: per-pixel zone classifier.
  std::size_t stage1_hidden = 16;
  std::size_t stage1_batch = 8;  // quadruplets per step, all pixels
  double stage1_learning_rate = 0.5;
  double stage1_momentum = 0.9;

  // Stage 2: flow objective on 2x2-pooled latents.
  DenoiserConfig stage2_model;
  std::size_t stage2_batch = 4;
  double stage2_learning_rate = 0.0005;
  double stage2_momentum = 0.9;

  // Settings of the full-scale recipe. Kept for reference; the toy run uses
  // the settings above.
  std::size_t reference_batch_size = 32;
  std::string reference_optimizer = "AdamW";
  double reference_learning_rate = 3e-5;
};

struct ToyTrainReport {
  std::size_t train_size = 0;
  std::size_t holdout_size = 0;
  // Entry i is the batch loss before update i; the last entry follows the
  // final update. `steps` updates give steps + 1 entries.
  std::vector<double> stage1_loss;
  std::vector<double> stage2_loss;
  double stage1_holdout_accuracy = 0.0;
  std::vector<Tensor> stage1_params;
  std::vector<Tensor> stage2_params;

  double stage1_reduction() const;  // 1 - final / initial
};

// Throws kEmptyDataset when fewer than two quadruplets are given (one is
// needed for training and one for holdout) and kDivergence when a loss
// becomes non-finite.
ToyTrainReport TrainToyTwoStage(const std::vector<ToyQuadruplet>& dataset,
                                const ToyTrainConfig& config);

// Zone prediction of a trained stage-1 model: argmax over the three logits.
TriZoneMask PredictZones(const std::vector<Tensor>& stage1_params, const RgbImage& p_c,
                         const RgbImage& g_g);

// "stage,step,loss" rows.
std::string FormatLossCsv(const ToyTrainReport& report);
nlohmann::ordered_json ReportSummary(const ToyTrainReport& report, const ToyTrainConfig& config);

}  // namespace trizone

#endif  // TRIZONE_TOY_TRAINING_HPP_
