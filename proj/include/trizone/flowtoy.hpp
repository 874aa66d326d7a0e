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

#ifndef TRIZONE_FLOWTOY_HPP_
#define TRIZONE_FLOWTOY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace trizone {

// Dense row-major tensor of doubles.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);
  // Throws kShapeMismatch unless values.size() is the product of the shape.
  Tensor(std::vector<std::size_t> shape, std::vector<double> values);

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return values_.size(); }
  std::size_t dim(std::size_t axis) const { return shape_.at(axis); }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  // Rank-2 access.
  double& at(std::size_t row, std::size_t col) { return values_[row * shape_[1] + col]; }
  double at(std::size_t row, std::size_t col) const { return values_[row * shape_[1] + col]; }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

// z_t = (1 - t) z0 + t eps. Throws kShapeMismatch, or kInvalidArgument when
// t is outside [0, 1].
Tensor Interpolate(const Tensor& z0, const Tensor& eps, double t);

// Projections for attention in which the keys and values of a second token
// set are appended to the self-attention keys and values.
//   latent tokens X [n, d], garment tokens G [m, g]
//   Q = X wq, K = [X wk; G wk_g], V = [X wv; G wv_g]   (k columns)
//   out = softmax(Q K^T / sqrt(k)) V wo                 [n, d]
struct AttentionParams {
  Tensor wq;    // [d, k]
  Tensor wk;    // [d, k]
  Tensor wv;    // [d, k]
  Tensor wk_g;  // [g, k]
  Tensor wv_g;  // [g, k]
  Tensor wo;    // [k, d]
};

struct AttentionResult {
  Tensor output;   // [n, d]
  Tensor weights;  // [n, n + m]; rows sum to 1
};

// `garment_tokens` may have zero rows, which leaves plain self-attention.
// Throws kShapeMismatch when a dimension disagrees with the parameters.
AttentionResult KvConcatAttention(const Tensor& latent_tokens, const Tensor& garment_tokens,
                                  const AttentionParams& params);

struct DenoiserConfig {
  std::size_t latent_dim = 3;   // d: channels per latent token
  std::size_t cond_dim = 6;     // c: spatially aligned condition channels
  std::size_t garment_dim = 5;  // g: garment token channels
  std::size_t hidden = 16;      // h
  std::size_t key_dim = 8;      // k
  std::size_t mlp = 32;         // f
  friend bool operator==(const DenoiserConfig&, const DenoiserConfig&) = default;
};

// One training example of the flow objective. Every tensor is rank 2 with
// one row per token; z0, eps and cond share the token count.
struct FlowSample {
  Tensor z0;       // [n, d]
  Tensor eps;      // [n, d]
  double t = 0.0;
  Tensor cond;     // [n, c]
  Tensor garment;  // [m, g], m may be 0
};

// Noise predictor eps_theta(z_t; cond, garment, t):
//   e = [z_t | cond | t] w_in + b_in           [n, h]
//   r = e + KvConcatAttention(e, garment)
//   y = tanh(r w1 + b1) w2 + b2                 [n, d]
class ToyDenoiser {
 public:
  enum Param : std::size_t {
    kWIn, kBIn, kWq, kWk, kWv, kWkG, kWvG, kWo, kW1, kB1, kW2, kB2, kParamCount
  };
  static const std::array<const char*, kParamCount>& ParamNames();

  ToyDenoiser() = default;
  // Weights ~ N(0, 1/fan_in), biases zero.
  ToyDenoiser(const DenoiserConfig& config, std::uint64_t seed);
  // Adopts existing parameters; throws kShapeMismatch if they do not form a
  // consistent model.
  explicit ToyDenoiser(std::vector<Tensor> params);

  const DenoiserConfig& config() const { return config_; }
  std::vector<Tensor>& params() { return params_; }
  const std::vector<Tensor>& params() const { return params_; }
  std::size_t parameter_count() const;

  Tensor Predict(const Tensor& z_t, double t, const Tensor& cond, const Tensor& garment) const;

 private:
  DenoiserConfig config_;
  std::vector<Tensor> params_;
};

using Weighting = std::function<double(double t)>;
double UnitWeighting(double t);

struct FlowLossResult {
  double loss = 0.0;
  std::vector<Tensor> gradients;  // same layout as ToyDenoiser::params()
};

// mean over the batch of w(t) * ||eps_theta(z_t; cond, t) - eps||^2, with
// exact reverse-mode gradients. Throws kInvalidArgument on an empty batch
// and kShapeMismatch on malformed samples.
FlowLossResult FlowLoss(const ToyDenoiser& model, const std::vector<FlowSample>& batch,
                        const Weighting& w = UnitWeighting);

// Plain SGD with heavy-ball momentum.
class MomentumSgd {
 public:
  MomentumSgd(double learning_rate, double momentum)
      : learning_rate_(learning_rate), momentum_(momentum) {}
  void Step(std::vector<Tensor>& params, const std::vector<Tensor>& gradients);

 private:
  double learning_rate_;
  double momentum_;
  std::vector<Tensor> velocity_;
};

// Parameter file: 8-byte magic "TZTOY1\0\0", uint32 tensor count, then per
// tensor uint32 rank, uint32 dims, and float64 values, all little-endian.
std::vector<std::uint8_t> SerializeTensors(const std::vector<Tensor>& tensors);
std::vector<Tensor> DeserializeTensors(const std::vector<std::uint8_t>& bytes);

}  // namespace trizone

#endif  // TRIZONE_FLOWTOY_HPP_
