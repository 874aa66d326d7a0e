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

#include "trizone/toy_training.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "trizone/error.hpp"
#include "trizone/image_io.hpp"
#include "trizone/manifest.hpp"
#include "trizone/mock_world.hpp"
#include "trizone/pipeline.hpp"
#include "trizone/random.hpp"

namespace trizone {

std::vector<ToyQuadruplet> MakeToyDataset(std::size_t count, const ImageGrid& grid,
                                          std::uint64_t seed) {
  const BackendSet backends = mock::MakeBackendSet();
  const RunConfig config;
  std::vector<ToyQuadruplet> out;
  // Each variant of the corpus yields at most 28 routable pairs.
  int variants = static_cast<int>(count / 28 + 1);
  while (out.size() < count) {
    out.clear();
    const std::vector<CorpusItem> corpus = MakeMockCorpus(grid, variants, seed);
    std::vector<SpecPair> pairs;
    for (const auto& item : corpus) pairs.push_back({item.pc, item.pg});
    const ConstructionPlan plan = EnumeratePlan(pairs);
    for (const auto* group : {&plan.round1, &plan.round2}) {
      for (const PlanEntry& entry : *group) {
        if (out.size() == count) break;
        const CorpusItem& item = corpus[entry.index];
        const std::uint64_t record_seed = DeriveSeed(seed, item.id);
        BuiltRecord built = entry.decision.round == Round::kRound1
                                ? ConstructRound1Record(item, record_seed, config, backends)
                                : ConstructRound2Record(item, record_seed, config, backends);
        if (built.record.status != RecordStatus::kOk) continue;
        out.push_back(ToyQuadruplet{item.id, std::move(built.p_c), std::move(built.p_g),
                                    std::move(built.g_g), std::move(built.m3g)});
      }
    }
    if (out.size() < count && variants > 1000) {
      throw Error(ErrorCode::kEmptyDataset, "the mock corpus does not yield enough records");
    }
    variants *= 2;
  }
  return out;
}

std::vector<ToyQuadruplet> LoadToyDataset(const std::filesystem::path& manifest) {
  const Manifest m = ReadManifest(manifest);
  const auto base = manifest.parent_path();
  std::vector<ToyQuadruplet> out;
  for (const auto& r : m.records) {
    if (r.status != RecordStatus::kOk) continue;
    out.push_back(ToyQuadruplet{r.id, ReadRgbImage(base / r.p_c), ReadRgbImage(base / r.p_g),
                                ReadRgbImage(base / r.g_g), ReadTriZoneMask(base / r.m3g)});
  }
  return out;
}

double ToyTrainReport::stage1_reduction() const {
  if (stage1_loss.empty() || stage1_loss.front() == 0.0) return 0.0;
  return 1.0 - stage1_loss.back() / stage1_loss.front();
}

namespace {

constexpr std::size_t kPixelFeatures = 8;
constexpr std::size_t kZones = 3;

void CheckFinite(double loss, const char* stage, std::size_t step) {
  if (!std::isfinite(loss)) {
    throw Error(ErrorCode::kDivergence, std::string(stage) + " loss became non-finite at step " +
                                            std::to_string(step));
  }
}

// Per-pixel features: P_c rgb, G_g rgb, normalized row and column.
Tensor PixelFeatures(const RgbImage& p_c, const RgbImage& g_g) {
  RequireSameGrid(p_c.grid(), g_g.grid(), "P_c and G_g");
  const ImageGrid& grid = p_c.grid();
  Tensor x({grid.area(), kPixelFeatures});
  const double rows = std::max(grid.height - 1, 1);
  const double cols = std::max(grid.width - 1, 1);
  for (int r = 0; r < grid.height; ++r) {
    for (int c = 0; c < grid.width; ++c) {
      const std::size_t i = grid.index(r, c);
      const Rgb a = p_c.at(r, c), b = g_g.at(r, c);
      const double f[kPixelFeatures] = {a.r / 255.0, a.g / 255.0, a.b / 255.0, b.r / 255.0,
                                        b.g / 255.0, b.b / 255.0, r / rows,    c / cols};
      for (std::size_t k = 0; k < kPixelFeatures; ++k) x.at(i, k) = f[k];
    }
  }
  return x;
}

// Stage-1 parameters: w1 [8, h], b1 [h], w2 [h, 3], b2 [3].
std::vector<Tensor> InitStage1(std::size_t hidden, Rng& rng) {
  std::vector<Tensor> p = {Tensor({kPixelFeatures, hidden}), Tensor({hidden}),
                           Tensor({hidden, kZones}), Tensor({kZones})};
  for (double& v : p[0].values()) v = rng.normal() / std::sqrt(double(kPixelFeatures));
  for (double& v : p[2].values()) v = rng.normal() / std::sqrt(double(hidden));
  return p;
}

Tensor Stage1Logits(const std::vector<Tensor>& p, const Tensor& x, Tensor* hidden_out) {
  const std::size_t n = x.dim(0), h = p[1].size();
  Tensor hid({n, h});
  Tensor logits({n, kZones});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < h; ++j) {
      double s = p[1][j];
      for (std::size_t k = 0; k < kPixelFeatures; ++k) s += x.at(i, k) * p[0].at(k, j);
      hid.at(i, j) = std::tanh(s);
    }
    for (std::size_t z = 0; z < kZones; ++z) {
      double s = p[3][z];
      for (std::size_t j = 0; j < h; ++j) s += hid.at(i, j) * p[2].at(j, z);
      logits.at(i, z) = s;
    }
  }
  if (hidden_out) *hidden_out = std::move(hid);
  return logits;
}

// Mean softmax cross-entropy over all rows, with gradients.
double Stage1Step(const std::vector<Tensor>& p, const Tensor& x,
                  const std::vector<std::uint8_t>& labels, std::vector<Tensor>& grads) {
  Tensor hid;
  const Tensor logits = Stage1Logits(p, x, &hid);
  const std::size_t n = x.dim(0), h = p[1].size();
  const double inv_n = 1.0 / static_cast<double>(n);
  grads = {Tensor(p[0].shape()), Tensor(p[1].shape()), Tensor(p[2].shape()),
           Tensor(p[3].shape())};
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double top = logits.at(i, 0);
    for (std::size_t z = 1; z < kZones; ++z) top = std::max(top, logits.at(i, z));
    double prob[kZones];
    double total = 0.0;
    for (std::size_t z = 0; z < kZones; ++z) {
      prob[z] = std::exp(logits.at(i, z) - top);
      total += prob[z];
    }
    for (double& v : prob) v /= total;
    loss -= std::log(std::max(prob[labels[i]], 1e-300)) * inv_n;
    double dlogit[kZones];
    for (std::size_t z = 0; z < kZones; ++z) {
      dlogit[z] = (prob[z] - (z == labels[i] ? 1.0 : 0.0)) * inv_n;
      grads[3][z] += dlogit[z];
    }
    for (std::size_t j = 0; j < h; ++j) {
      double dh = 0.0;
      for (std::size_t z = 0; z < kZones; ++z) {
        grads[2].at(j, z) += hid.at(i, j) * dlogit[z];
        dh += p[2].at(j, z) * dlogit[z];
      }
      const double dpre = dh * (1.0 - hid.at(i, j) * hid.at(i, j));
      grads[1][j] += dpre;
      for (std::size_t k = 0; k < kPixelFeatures; ++k) grads[0].at(k, j) += x.at(i, k) * dpre;
    }
  }
  return loss;
}

double Scaled(std::uint8_t v) { return v / 127.5 - 1.0; }

// 2x2 average pooling into [rows * cols, 3] tokens scaled to [-1, 1].
Tensor PoolRgb(const RgbImage& image) {
  const ImageGrid& g = image.grid();
  const int rows = std::max(g.height / 2, 1), cols = std::max(g.width / 2, 1);
  Tensor out({static_cast<std::size_t>(rows * cols), 3});
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double acc[3] = {0, 0, 0};
      int n = 0;
      for (int dr = 0; dr < 2; ++dr) {
        for (int dc = 0; dc < 2; ++dc) {
          if (!g.contains(2 * r + dr, 2 * c + dc)) continue;
          const Rgb px = image.at(2 * r + dr, 2 * c + dc);
          acc[0] += Scaled(px.r);
          acc[1] += Scaled(px.g);
          acc[2] += Scaled(px.b);
          ++n;
        }
      }
      for (int k = 0; k < 3; ++k) out.at(r * cols + c, k) = acc[k] / n;
    }
  }
  return out;
}

// Zone fractions over the same 2x2 cells.
Tensor PoolZones(const TriZoneMask& mask) {
  const ImageGrid& g = mask.grid();
  const int rows = std::max(g.height / 2, 1), cols = std::max(g.width / 2, 1);
  Tensor out({static_cast<std::size_t>(rows * cols), kZones});
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      int n = 0;
      double acc[kZones] = {0, 0, 0};
      for (int dr = 0; dr < 2; ++dr) {
        for (int dc = 0; dc < 2; ++dc) {
          if (!g.contains(2 * r + dr, 2 * c + dc)) continue;
          acc[static_cast<int>(mask.at(2 * r + dr, 2 * c + dc))] += 1.0;
          ++n;
        }
      }
      for (std::size_t k = 0; k < kZones; ++k) out.at(r * cols + c, k) = acc[k] / n;
    }
  }
  return out;
}

// A 4x4 grid of garment tokens: mean color of each cell plus its center.
Tensor GarmentTokens(const RgbImage& g_g) {
  constexpr int kCells = 4;
  const ImageGrid& g = g_g.grid();
  Tensor out({kCells * kCells, 5});
  for (int cr = 0; cr < kCells; ++cr) {
    for (int cc = 0; cc < kCells; ++cc) {
      const int r0 = cr * g.height / kCells, r1 = std::max((cr + 1) * g.height / kCells, r0 + 1);
      const int c0 = cc * g.width / kCells, c1 = std::max((cc + 1) * g.width / kCells, c0 + 1);
      double acc[3] = {0, 0, 0};
      int n = 0;
      for (int r = r0; r < r1 && r < g.height; ++r) {
        for (int c = c0; c < c1 && c < g.width; ++c) {
          const Rgb px = g_g.at(r, c);
          acc[0] += Scaled(px.r);
          acc[1] += Scaled(px.g);
          acc[2] += Scaled(px.b);
          ++n;
        }
      }
      const std::size_t row = static_cast<std::size_t>(cr * kCells + cc);
      for (int k = 0; k < 3; ++k) out.at(row, k) = n ? acc[k] / n : 0.0;
      out.at(row, 3) = (cr + 0.5) / kCells;
      out.at(row, 4) = (cc + 0.5) / kCells;
    }
  }
  return out;
}

struct Stage2Example {
  Tensor z0;
  Tensor cond;
  Tensor garment;
};

}  // namespace

TriZoneMask PredictZones(const std::vector<Tensor>& stage1_params, const RgbImage& p_c,
                         const RgbImage& g_g) {
  const Tensor logits = Stage1Logits(stage1_params, PixelFeatures(p_c, g_g), nullptr);
  std::vector<std::uint8_t> codes(logits.dim(0));
  for (std::size_t i = 0; i < codes.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t z = 1; z < kZones; ++z) {
      if (logits.at(i, z) > logits.at(i, best)) best = z;
    }
    codes[i] = static_cast<std::uint8_t>(best);
  }
  return TriZoneMask(p_c.grid(), std::move(codes));
}

ToyTrainReport TrainToyTwoStage(const std::vector<ToyQuadruplet>& dataset,
                                const ToyTrainConfig& config) {
  if (dataset.size() < 2) {
    throw Error(ErrorCode::kEmptyDataset, "toy training needs at least two quadruplets, got " +
                                              std::to_string(dataset.size()));
  }
  const ImageGrid grid = dataset.front().p_c.grid();
  for (const auto& q : dataset) {
    RequireSameGrid(grid, q.p_c.grid(), "dataset images");
    RequireSameGrid(grid, q.p_g.grid(), "dataset images");
    RequireSameGrid(grid, q.g_g.grid(), "dataset images");
    RequireSameGrid(grid, q.m3g.grid(), "dataset images");
  }

  ToyTrainReport report;
  report.holdout_size = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::lround(config.holdout_fraction * dataset.size())), 1,
      dataset.size() - 1);
  report.train_size = dataset.size() - report.holdout_size;
  const std::size_t train_n = report.train_size;

  // Stage 1: (P_c, G_g) -> M3g, per pixel.
  std::vector<Tensor> features;
  std::vector<std::vector<std::uint8_t>> labels;
  for (const auto& q : dataset) {
    features.push_back(PixelFeatures(q.p_c, q.g_g));
    labels.emplace_back(q.m3g.codes().begin(), q.m3g.codes().end());
  }
  Rng rng(config.seed);
  std::vector<Tensor> stage1 = InitStage1(config.stage1_hidden, rng);
  MomentumSgd sgd1(config.stage1_learning_rate, config.stage1_momentum);
  const std::size_t pixels = grid.area();
  for (std::size_t step = 0; step <= config.steps; ++step) {
    const std::size_t batch = std::min(config.stage1_batch, train_n);
    Tensor x({batch * pixels, kPixelFeatures});
    std::vector<std::uint8_t> y;
    y.reserve(batch * pixels);
    for (std::size_t b = 0; b < batch; ++b) {
      const std::size_t k = rng.below(train_n);
      std::copy(features[k].values().begin(), features[k].values().end(),
                x.values().begin() + b * pixels * kPixelFeatures);
      y.insert(y.end(), labels[k].begin(), labels[k].end());
    }
    std::vector<Tensor> grads;
    const double loss = Stage1Step(stage1, x, y, grads);
    CheckFinite(loss, "stage-1", step);
    report.stage1_loss.push_back(loss);
    if (step < config.steps) sgd1.Step(stage1, grads);
  }

  std::size_t correct = 0, total = 0;
  for (std::size_t k = train_n; k < dataset.size(); ++k) {
    const TriZoneMask predicted = PredictZones(stage1, dataset[k].p_c, dataset[k].g_g);
    for (std::size_t i = 0; i < pixels; ++i) {
      correct += predicted.codes()[i] == labels[k][i] ? 1 : 0;
      ++total;
    }
  }
  report.stage1_holdout_accuracy = static_cast<double>(correct) / static_cast<double>(total);

  // Stage 2: (P_c, predicted M3, G_g) -> P_g through the flow objective.
  std::vector<Stage2Example> examples;
  for (std::size_t k = 0; k < train_n; ++k) {
    const auto& q = dataset[k];
    const Tensor pc = PoolRgb(q.p_c);
    const Tensor zones = PoolZones(PredictZones(stage1, q.p_c, q.g_g));
    Tensor cond({pc.dim(0), 6});
    for (std::size_t i = 0; i < pc.dim(0); ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        cond.at(i, c) = pc.at(i, c);
        cond.at(i, 3 + c) = zones.at(i, c);
      }
    }
    examples.push_back(Stage2Example{PoolRgb(q.p_g), std::move(cond), GarmentTokens(q.g_g)});
  }
  DenoiserConfig model_config = config.stage2_model;
  model_config.latent_dim = 3;
  model_config.cond_dim = 6;
  model_config.garment_dim = 5;
  ToyDenoiser model(model_config, rng.next());
  MomentumSgd sgd2(config.stage2_learning_rate, config.stage2_momentum);
  for (std::size_t step = 0; step <= config.steps; ++step) {
    std::vector<FlowSample> batch;
    for (std::size_t b = 0; b < std::min(config.stage2_batch, train_n); ++b) {
      const Stage2Example& ex = examples[rng.below(train_n)];
      FlowSample s;
      s.z0 = ex.z0;
      s.eps = Tensor(ex.z0.shape());
      for (double& v : s.eps.values()) v = rng.normal();
      s.t = rng.uniform();
      s.cond = ex.cond;
      s.garment = ex.garment;
      batch.push_back(std::move(s));
    }
    FlowLossResult result = FlowLoss(model, batch);
    CheckFinite(result.loss, "stage-2", step);
    report.stage2_loss.push_back(result.loss);
    if (step < config.steps) sgd2.Step(model.params(), result.gradients);
  }
  report.stage1_params = std::move(stage1);
  report.stage2_params = model.params();
  return report;
}

std::string FormatLossCsv(const ToyTrainReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "stage,step,loss\n";
  for (std::size_t i = 0; i < report.stage1_loss.size(); ++i) {
    out << "1," << i << ',' << report.stage1_loss[i] << '\n';
  }
  for (std::size_t i = 0; i < report.stage2_loss.size(); ++i) {
    out << "2," << i << ',' << report.stage2_loss[i] << '\n';
  }
  return out.str();
}

nlohmann::ordered_json ReportSummary(const ToyTrainReport& report, const ToyTrainConfig& config) {
  nlohmann::ordered_json j;
  j["seed"] = config.seed;
  j["steps"] = config.steps;
  j["train_size"] = report.train_size;
  j["holdout_size"] = report.holdout_size;
  j["stage1_initial_loss"] = report.stage1_loss.empty() ? 0.0 : report.stage1_loss.front();
  j["stage1_final_loss"] = report.stage1_loss.empty() ? 0.0 : report.stage1_loss.back();
  j["stage1_reduction"] = report.stage1_reduction();
  j["stage1_holdout_accuracy"] = report.stage1_holdout_accuracy;
  j["stage2_initial_loss"] = report.stage2_loss.empty() ? 0.0 : report.stage2_loss.front();
  j["stage2_final_loss"] = report.stage2_loss.empty() ? 0.0 : report.stage2_loss.back();
  nlohmann::ordered_json reference;
  reference["batch_size"] = config.reference_batch_size;
  reference["optimizer"] = config.reference_optimizer;
  reference["learning_rate"] = config.reference_learning_rate;
  j["reference_recipe"] = reference;
  return j;
}

}  // namespace trizone
