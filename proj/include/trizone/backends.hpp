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

#ifndef TRIZONE_BACKENDS_HPP_
#define TRIZONE_BACKENDS_HPP_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "trizone/maskcore.hpp"

namespace trizone {

// Capabilities reached over the wire, one path each.
enum class Capability { kTryOn, kInpaint, kParse, kDensepose, kTriZone, kJudge };
std::string_view CapabilityPath(Capability capability);  // "/tryon", ...

enum class MaskKind { kBinary, kTriZone, kNone };
std::string_view MaskKindName(MaskKind kind);  // "binary" | "trizone" | "none"

struct TryOnRequest {
  RgbImage model_image;
  RgbImage garment_image;
  std::variant<std::monostate, BinaryMask, TriZoneMask> mask;

  MaskKind kind() const;
  // Throws kGridMismatch when the images or mask disagree on the grid.
  void Validate() const;
};

enum class Verdict { kReasonable, kUnreasonable };
std::string_view VerdictName(Verdict verdict);

struct JudgeVerdict {
  Verdict verdict = Verdict::kUnreasonable;
  std::string raw_reply;
};

// Lowercases and trims the reply. Any occurrence of "unreasonable" wins;
// otherwise "reasonable" must occur. Throws kUnparseableReply.
JudgeVerdict ParseJudgeReply(std::string_view reply);

// Where a result came from; recorded in the pipeline log.
struct Provenance {
  std::string source;    // "mock" | "remote"
  std::string endpoint;  // base URL + path, or mock name
  double latency_ms = 0.0;
  int attempts = 0;
};

// Per-call context. `key` is the idempotency key the remote client sends
// unchanged on every retry of the same call.
struct CallContext {
  std::string key;
  Provenance* provenance = nullptr;
};

class TryOnBackend {
 public:
  virtual ~TryOnBackend() = default;
  virtual RgbImage TryOn(const TryOnRequest& request, const CallContext& ctx) = 0;
};

class InpaintBackend {
 public:
  virtual ~InpaintBackend() = default;
  // The result may differ from `image` only inside `region`.
  virtual RgbImage Inpaint(const RgbImage& image, const BinaryMask& region,
                           const CallContext& ctx) = 0;
};

class ParsingBackend {
 public:
  virtual ~ParsingBackend() = default;
  virtual LabelMap ParseHuman(const RgbImage& image, const CallContext& ctx) = 0;
  virtual LabelMap Densepose(const RgbImage& image, const CallContext& ctx) = 0;
};

// First stage of a trained two-stage model: predicts the tri-zone mask for
// dressing `model_image` in `garment_image`.
class TriZoneBackend {
 public:
  virtual ~TriZoneBackend() = default;
  virtual TriZoneMask Predict(const RgbImage& model_image, const RgbImage& garment_image,
                              const CallContext& ctx) = 0;
};

class JudgeBackend {
 public:
  virtual ~JudgeBackend() = default;
  virtual JudgeVerdict Judge(const RgbImage& triptych, std::string_view prompt,
                             const CallContext& ctx) = 0;
};

// Everything the construction pipeline needs. Round-2 construction reads
// `trizone` and `tryon_round2`, and only when `round1_trained` is set.
struct BackendSet {
  std::shared_ptr<TryOnBackend> tryon;
  std::shared_ptr<InpaintBackend> inpaint;
  std::shared_ptr<ParsingBackend> parsing;
  std::shared_ptr<TriZoneBackend> trizone;
  std::shared_ptr<TryOnBackend> tryon_round2;
  bool round1_trained = false;
};

// Feature-network metrics (FID, KID, LPIPS) are pluggable only; no
// implementation ships with the toolkit.
class FeatureMetricBackend {
 public:
  virtual ~FeatureMetricBackend() = default;
  virtual std::string_view name() const = 0;
  virtual double Compute(const std::vector<RgbImage>& reference,
                         const std::vector<RgbImage>& generated) = 0;
};

}  // namespace trizone

#endif  // TRIZONE_BACKENDS_HPP_
