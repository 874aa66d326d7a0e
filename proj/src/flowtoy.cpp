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

#include "trizone/flowtoy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "trizone/error.hpp"
#include "trizone/random.hpp"

namespace trizone {

namespace {

std::size_t Product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<std::size_t>());
}

std::string ShapeString(const Tensor& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (i) s += ", ";
    s += std::to_string(t.dim(i));
  }
  return s + "]";
}

void RequireMatrix(const Tensor& t, std::size_t rows, std::size_t cols, const char* what) {
  if (t.rank() != 2 || t.dim(0) != rows || t.dim(1) != cols) {
    throw Error(ErrorCode::kShapeMismatch, std::string(what) + " has shape " + ShapeString(t) +
                                               ", expected [" + std::to_string(rows) + ", " +
                                               std::to_string(cols) + "]");
  }
}

void RequireVector(const Tensor& t, std::size_t n, const char* what) {
  if (t.rank() != 1 || t.dim(0) != n) {
    throw Error(ErrorCode::kShapeMismatch, std::string(what) + " has shape " + ShapeString(t) +
                                               ", expected [" + std::to_string(n) + "]");
  }
}

void RequireCols(const Tensor& t, std::size_t cols, const char* what) {
  if (t.rank() != 2 || t.dim(1) != cols) {
    throw Error(ErrorCode::kShapeMismatch, std::string(what) + " has shape " + ShapeString(t) +
                                               ", expected [*, " + std::to_string(cols) + "]");
  }
}

// C = A B
Tensor MatMul(const Tensor& a, const Tensor& b) {
  const std::size_t n = a.dim(0), k = a.dim(1), m = b.dim(1);
  Tensor c({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double av = a.at(i, p);
      if (av == 0.0) continue;
      const double* brow = &b.values()[p * m];
      double* crow = &c.values()[i * m];
      for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
  }
  return c;
}

// C = A^T B
Tensor MatMulTN(const Tensor& a, const Tensor& b) {
  const std::size_t n = a.dim(0), k = a.dim(1), m = b.dim(1);
  Tensor c({k, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double av = a.at(i, p);
      if (av == 0.0) continue;
      const double* brow = &b.values()[i * m];
      double* crow = &c.values()[p * m];
      for (std::size_t j = 0; j < m; ++j) crow[j] += av * brow[j];
    }
  }
  return c;
}

// C = A B^T
Tensor MatMulNT(const Tensor& a, const Tensor& b) {
  const std::size_t n = a.dim(0), k = a.dim(1), m = b.dim(0);
  Tensor c({n, m});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += a.at(i, p) * b.at(j, p);
      c.at(i, j) = s;
    }
  }
  return c;
}

void AddInPlace(Tensor& a, const Tensor& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

void AddRowVector(Tensor& a, const Tensor& bias) {
  const std::size_t cols = a.dim(1);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += bias[i % cols];
}

Tensor ColumnSums(const Tensor& a) {
  const std::size_t cols = a.dim(1);
  Tensor s({cols});
  for (std::size_t i = 0; i < a.size(); ++i) s[i % cols] += a[i];
  return s;
}

// Stacks two matrices with the same column count.
Tensor VStack(const Tensor& a, const Tensor& b) {
  Tensor c({a.dim(0) + b.dim(0), a.dim(1)});
  std::copy(a.values().begin(), a.values().end(), c.values().begin());
  std::copy(b.values().begin(), b.values().end(), c.values().begin() + a.size());
  return c;
}

Tensor RowSlice(const Tensor& a, std::size_t begin, std::size_t end) {
  const std::size_t cols = a.dim(1);
  Tensor c({end - begin, cols});
  std::copy(a.values().begin() + begin * cols, a.values().begin() + end * cols,
            c.values().begin());
  return c;
}

void SoftmaxRows(Tensor& s) {
  const std::size_t cols = s.dim(1);
  for (std::size_t i = 0; i < s.dim(0); ++i) {
    double* row = &s.values()[i * cols];
    const double top = *std::max_element(row, row + cols);
    double total = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      row[j] = std::exp(row[j] - top);
      total += row[j];
    }
    for (std::size_t j = 0; j < cols; ++j) row[j] /= total;
  }
}

void CheckAttentionParams(const AttentionParams& p, std::size_t d, std::size_t g) {
  const std::size_t k = p.wq.rank() == 2 ? p.wq.dim(1) : 0;
  RequireMatrix(p.wq, d, k, "wq");
  RequireMatrix(p.wk, d, k, "wk");
  RequireMatrix(p.wv, d, k, "wv");
  RequireMatrix(p.wk_g, g, k, "wk_g");
  RequireMatrix(p.wv_g, g, k, "wv_g");
  RequireMatrix(p.wo, k, d, "wo");
}

// Intermediate values kept for the backward pass.
struct AttentionTape {
  Tensor q, k, v, p, z;
};

Tensor AttentionForward(const Tensor& x, const Tensor& g, const AttentionParams& p,
                        AttentionTape* tape) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.wq.dim(1)));
  Tensor q = MatMul(x, p.wq);
  Tensor k = VStack(MatMul(x, p.wk), MatMul(g, p.wk_g));
  Tensor v = VStack(MatMul(x, p.wv), MatMul(g, p.wv_g));
  Tensor s = MatMulNT(q, k);
  for (double& e : s.values()) e *= scale;
  SoftmaxRows(s);
  Tensor z = MatMul(s, v);
  Tensor out = MatMul(z, p.wo);
  if (tape) *tape = AttentionTape{std::move(q), std::move(k), std::move(v), std::move(s), std::move(z)};
  return out;
}

struct AttentionGrads {
  Tensor wq, wk, wv, wk_g, wv_g, wo;
  Tensor dx;
};

AttentionGrads AttentionBackward(const Tensor& x, const Tensor& g, const AttentionParams& p,
                                 const AttentionTape& tape, const Tensor& d_out) {
  const std::size_t n = x.dim(0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p.wq.dim(1)));
  AttentionGrads grads;
  grads.wo = MatMulTN(tape.z, d_out);
  const Tensor dz = MatMulNT(d_out, p.wo);
  const Tensor dp = MatMulNT(dz, tape.v);
  const Tensor dv = MatMulTN(tape.p, dz);
  Tensor ds({dp.dim(0), dp.dim(1)});
  const std::size_t cols = dp.dim(1);
  for (std::size_t i = 0; i < dp.dim(0); ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < cols; ++j) dot += dp.at(i, j) * tape.p.at(i, j);
    for (std::size_t j = 0; j < cols; ++j) {
      ds.at(i, j) = tape.p.at(i, j) * (dp.at(i, j) - dot) * scale;
    }
  }
  const Tensor dq = MatMul(ds, tape.k);
  const Tensor dk = MatMulTN(ds, tape.q);
  const std::size_t total = dk.dim(0);
  const Tensor dk_x = RowSlice(dk, 0, n), dk_g = RowSlice(dk, n, total);
  const Tensor dv_x = RowSlice(dv, 0, n), dv_g = RowSlice(dv, n, total);
  grads.wq = MatMulTN(x, dq);
  grads.wk = MatMulTN(x, dk_x);
  grads.wv = MatMulTN(x, dv_x);
  grads.wk_g = MatMulTN(g, dk_g);
  grads.wv_g = MatMulTN(g, dv_g);
  grads.dx = MatMulNT(dq, p.wq);
  AddInPlace(grads.dx, MatMulNT(dk_x, p.wk));
  AddInPlace(grads.dx, MatMulNT(dv_x, p.wv));
  return grads;
}

Tensor RandomMatrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Tensor t({rows, cols});
  const double sd = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(rows, 1)));
  for (double& v : t.values()) v = rng.normal() * sd;
  return t;
}

}  // namespace

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)), values_(Product(shape_), fill) {}

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != Product(shape_)) {
    throw Error(ErrorCode::kShapeMismatch, std::to_string(values_.size()) +
                                               " values do not fill shape " + ShapeString(*this));
  }
}

Tensor Interpolate(const Tensor& z0, const Tensor& eps, double t) {
  if (z0.shape() != eps.shape()) {
    throw Error(ErrorCode::kShapeMismatch,
                "z0 " + ShapeString(z0) + " and eps " + ShapeString(eps) + " differ");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "t must lie in [0, 1]");
  }
  Tensor out(z0.shape());
  // The endpoints are returned as exact copies.
  if (t == 0.0) return z0;
  if (t == 1.0) return eps;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - t) * z0[i] + t * eps[i];
  return out;
}

AttentionResult KvConcatAttention(const Tensor& latent_tokens, const Tensor& garment_tokens,
                                  const AttentionParams& params) {
  if (latent_tokens.rank() != 2 || garment_tokens.rank() != 2) {
    throw Error(ErrorCode::kShapeMismatch, "token sets must be rank 2");
  }
  CheckAttentionParams(params, latent_tokens.dim(1), garment_tokens.dim(1));
  AttentionTape tape;
  AttentionResult result;
  result.output = AttentionForward(latent_tokens, garment_tokens, params, &tape);
  result.weights = std::move(tape.p);
  return result;
}

const std::array<const char*, ToyDenoiser::kParamCount>& ToyDenoiser::ParamNames() {
  static const std::array<const char*, kParamCount> names = {
      "w_in", "b_in", "wq", "wk", "wv", "wk_g", "wv_g", "wo", "w1", "b1", "w2", "b2"};
  return names;
}

ToyDenoiser::ToyDenoiser(const DenoiserConfig& c, std::uint64_t seed) : config_(c) {
  Rng rng(seed);
  const std::size_t in = c.latent_dim + c.cond_dim + 1;
  params_.resize(kParamCount);
  params_[kWIn] = RandomMatrix(in, c.hidden, rng);
  params_[kBIn] = Tensor({c.hidden});
  params_[kWq] = RandomMatrix(c.hidden, c.key_dim, rng);
  params_[kWk] = RandomMatrix(c.hidden, c.key_dim, rng);
  params_[kWv] = RandomMatrix(c.hidden, c.key_dim, rng);
  params_[kWkG] = RandomMatrix(c.garment_dim, c.key_dim, rng);
  params_[kWvG] = RandomMatrix(c.garment_dim, c.key_dim, rng);
  params_[kWo] = RandomMatrix(c.key_dim, c.hidden, rng);
  params_[kW1] = RandomMatrix(c.hidden, c.mlp, rng);
  params_[kB1] = Tensor({c.mlp});
  params_[kW2] = RandomMatrix(c.mlp, c.latent_dim, rng);
  params_[kB2] = Tensor({c.latent_dim});
}

ToyDenoiser::ToyDenoiser(std::vector<Tensor> params) : params_(std::move(params)) {
  if (params_.size() != kParamCount) {
    throw Error(ErrorCode::kShapeMismatch, "expected " + std::to_string(kParamCount) +
                                               " parameter tensors, got " +
                                               std::to_string(params_.size()));
  }
  const Tensor& w_in = params_[kWIn];
  const Tensor& w2 = params_[kW2];
  if (w_in.rank() != 2 || w2.rank() != 2 || params_[kWq].rank() != 2 ||
      params_[kWkG].rank() != 2 || params_[kW1].rank() != 2) {
    throw Error(ErrorCode::kShapeMismatch, "weight tensors must be rank 2");
  }
  config_.latent_dim = w2.dim(1);
  config_.hidden = w_in.dim(1);
  config_.key_dim = params_[kWq].dim(1);
  config_.garment_dim = params_[kWkG].dim(0);
  config_.mlp = params_[kW1].dim(1);
  if (w_in.dim(0) < config_.latent_dim + 1) {
    throw Error(ErrorCode::kShapeMismatch, "w_in is too small for the latent width");
  }
  config_.cond_dim = w_in.dim(0) - config_.latent_dim - 1;
  const DenoiserConfig& c = config_;
  RequireVector(params_[kBIn], c.hidden, "b_in");
  RequireMatrix(params_[kWk], c.hidden, c.key_dim, "wk");
  RequireMatrix(params_[kWv], c.hidden, c.key_dim, "wv");
  RequireMatrix(params_[kWq], c.hidden, c.key_dim, "wq");
  RequireMatrix(params_[kWvG], c.garment_dim, c.key_dim, "wv_g");
  RequireMatrix(params_[kWo], c.key_dim, c.hidden, "wo");
  RequireMatrix(params_[kW1], c.hidden, c.mlp, "w1");
  RequireVector(params_[kB1], c.mlp, "b1");
  RequireMatrix(w2, c.mlp, c.latent_dim, "w2");
  RequireVector(params_[kB2], c.latent_dim, "b2");
}

std::size_t ToyDenoiser::parameter_count() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.size();
  return n;
}

namespace {

struct DenoiserTape {
  Tensor input;  // [n, d + c + 1]
  Tensor e;      // [n, h]
  AttentionTape attention;
  Tensor r;      // [n, h]
  Tensor u;      // [n, f]
  Tensor y;      // [n, d]
};

AttentionParams AttentionOf(const std::vector<Tensor>& p) {
  return AttentionParams{p[ToyDenoiser::kWq],  p[ToyDenoiser::kWk],  p[ToyDenoiser::kWv],
                         p[ToyDenoiser::kWkG], p[ToyDenoiser::kWvG], p[ToyDenoiser::kWo]};
}

void CheckSample(const DenoiserConfig& c, const Tensor& z_t, const Tensor& cond,
                 const Tensor& garment) {
  RequireCols(z_t, c.latent_dim, "latent tokens");
  RequireMatrix(cond, z_t.dim(0), c.cond_dim, "condition");
  RequireCols(garment, c.garment_dim, "garment tokens");
}

void Forward(const std::vector<Tensor>& p, const AttentionParams& attention, const Tensor& z_t,
             double t, const Tensor& cond, const Tensor& garment, DenoiserTape& tape) {
  const std::size_t n = z_t.dim(0), d = z_t.dim(1), c = cond.dim(1);
  tape.input = Tensor({n, d + c + 1});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) tape.input.at(i, j) = z_t.at(i, j);
    for (std::size_t j = 0; j < c; ++j) tape.input.at(i, d + j) = cond.at(i, j);
    tape.input.at(i, d + c) = t;
  }
  tape.e = MatMul(tape.input, p[ToyDenoiser::kWIn]);
  AddRowVector(tape.e, p[ToyDenoiser::kBIn]);
  tape.r = AttentionForward(tape.e, garment, attention, &tape.attention);
  AddInPlace(tape.r, tape.e);
  tape.u = MatMul(tape.r, p[ToyDenoiser::kW1]);
  AddRowVector(tape.u, p[ToyDenoiser::kB1]);
  for (double& v : tape.u.values()) v = std::tanh(v);
  tape.y = MatMul(tape.u, p[ToyDenoiser::kW2]);
  AddRowVector(tape.y, p[ToyDenoiser::kB2]);
}

}  // namespace

Tensor ToyDenoiser::Predict(const Tensor& z_t, double t, const Tensor& cond,
                            const Tensor& garment) const {
  CheckSample(config_, z_t, cond, garment);
  DenoiserTape tape;
  Forward(params_, AttentionOf(params_), z_t, t, cond, garment, tape);
  return std::move(tape.y);
}

double UnitWeighting(double) { return 1.0; }

FlowLossResult FlowLoss(const ToyDenoiser& model, const std::vector<FlowSample>& batch,
                        const Weighting& w) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "flow loss needs a non-empty batch");
  const auto& p = model.params();
  const AttentionParams attention = AttentionOf(p);
  const double inv_batch = 1.0 / static_cast<double>(batch.size());

  FlowLossResult result;
  result.gradients.reserve(p.size());
  for (const auto& param : p) result.gradients.emplace_back(param.shape());
  auto& grad = result.gradients;

  for (const FlowSample& sample : batch) {
    if (sample.z0.shape() != sample.eps.shape()) {
      throw Error(ErrorCode::kShapeMismatch, "z0 and eps shapes differ");
    }
    CheckSample(model.config(), sample.z0, sample.cond, sample.garment);
    const Tensor z_t = Interpolate(sample.z0, sample.eps, sample.t);
    DenoiserTape tape;
    Forward(p, attention, z_t, sample.t, sample.cond, sample.garment, tape);

    const double weight = w(sample.t);
    double sq = 0.0;
    Tensor dy(tape.y.shape());
    for (std::size_t i = 0; i < dy.size(); ++i) {
      const double diff = tape.y[i] - sample.eps[i];
      sq += diff * diff;
      dy[i] = 2.0 * weight * diff * inv_batch;
    }
    result.loss += weight * sq * inv_batch;
    if (weight == 0.0) continue;

    AddInPlace(grad[ToyDenoiser::kW2], MatMulTN(tape.u, dy));
    AddInPlace(grad[ToyDenoiser::kB2], ColumnSums(dy));
    Tensor du = MatMulNT(dy, p[ToyDenoiser::kW2]);
    for (std::size_t i = 0; i < du.size(); ++i) du[i] *= 1.0 - tape.u[i] * tape.u[i];
    AddInPlace(grad[ToyDenoiser::kW1], MatMulTN(tape.r, du));
    AddInPlace(grad[ToyDenoiser::kB1], ColumnSums(du));
    const Tensor dr = MatMulNT(du, p[ToyDenoiser::kW1]);

    AttentionGrads ag = AttentionBackward(tape.e, sample.garment, attention, tape.attention, dr);
    AddInPlace(grad[ToyDenoiser::kWq], ag.wq);
    AddInPlace(grad[ToyDenoiser::kWk], ag.wk);
    AddInPlace(grad[ToyDenoiser::kWv], ag.wv);
    AddInPlace(grad[ToyDenoiser::kWkG], ag.wk_g);
    AddInPlace(grad[ToyDenoiser::kWvG], ag.wv_g);
    AddInPlace(grad[ToyDenoiser::kWo], ag.wo);
    Tensor de = dr;  // residual path
    AddInPlace(de, ag.dx);
    AddInPlace(grad[ToyDenoiser::kWIn], MatMulTN(tape.input, de));
    AddInPlace(grad[ToyDenoiser::kBIn], ColumnSums(de));
  }
  return result;
}

void MomentumSgd::Step(std::vector<Tensor>& params, const std::vector<Tensor>& gradients) {
  if (gradients.size() != params.size()) {
    throw Error(ErrorCode::kShapeMismatch, "gradient count differs from parameter count");
  }
  if (velocity_.empty()) {
    for (const auto& p : params) velocity_.emplace_back(p.shape());
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (gradients[i].shape() != params[i].shape()) {
      throw Error(ErrorCode::kShapeMismatch, "gradient shape differs for tensor " + std::to_string(i));
    }
    for (std::size_t j = 0; j < params[i].size(); ++j) {
      velocity_[i][j] = momentum_ * velocity_[i][j] + gradients[i][j];
      params[i][j] -= learning_rate_ * velocity_[i][j];
    }
  }
}

namespace {

constexpr char kMagic[8] = {'T', 'Z', 'T', 'O', 'Y', '1', '\0', '\0'};

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutF64(std::vector<std::uint8_t>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}
  std::uint64_t Take(int n) {
    if (pos_ + static_cast<std::size_t>(n) > bytes_.size()) {
      throw Error(ErrorCode::kFormat, "parameter file is truncated");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> SerializeTensors(const std::vector<Tensor>& tensors) {
  std::vector<std::uint8_t> out(kMagic, kMagic + sizeof(kMagic));
  PutU32(out, static_cast<std::uint32_t>(tensors.size()));
  for (const auto& t : tensors) {
    PutU32(out, static_cast<std::uint32_t>(t.rank()));
    for (std::size_t d : t.shape()) PutU32(out, static_cast<std::uint32_t>(d));
    for (double v : t.values()) PutF64(out, v);
  }
  return out;
}

std::vector<Tensor> DeserializeTensors(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kFormat, "not a toy parameter file");
  }
  Reader reader(bytes);
  reader.Take(4);
  reader.Take(4);
  const auto count = reader.Take(4);
  std::vector<Tensor> tensors;
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto rank = reader.Take(4);
    if (rank > 8) throw Error(ErrorCode::kFormat, "tensor rank too large");
    std::vector<std::size_t> shape;
    for (std::uint64_t r = 0; r < rank; ++r) shape.push_back(reader.Take(4));
    const std::size_t n = Product(shape);
    if (n > reader.remaining() / 8) throw Error(ErrorCode::kFormat, "parameter file is truncated");
    std::vector<double> values(n);
    for (double& v : values) v = std::bit_cast<double>(reader.Take(8));
    tensors.emplace_back(std::move(shape), std::move(values));
  }
  if (reader.remaining() != 0) throw Error(ErrorCode::kFormat, "trailing bytes after tensors");
  return tensors;
}

}  // namespace trizone
