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

#ifndef TRIZONE_HTTP_BACKEND_HPP_
#define TRIZONE_HTTP_BACKEND_HPP_

#include <atomic>
#include <optional>
#include <string>

#include "json.hpp"
#include "trizone/backends.hpp"

namespace trizone {

struct BackendEndpoint {
  std::string base_url;          // e.g. "http://127.0.0.1:8080" or with a path prefix
  double timeout_seconds = 60.0;
  int retry_limit = 2;
  std::optional<std::string> auth_token;
  double backoff_seconds = 0.5;  // doubled after every failed attempt
};

// Throws kInvalidArgument unless timeout > 0, retry_limit >= 0 and the URL
// has an http:// scheme.
void ValidateEndpoint(const BackendEndpoint& endpoint);

// JSON-over-HTTP client for model servers. Every capability is a POST to
// its own path; images travel as base64 PNG strings. 5xx responses and
// transport failures are retried up to retry_limit times with the same
// body and idempotency key; 4xx responses fail immediately.
//
// Errors: kTimeout when the server never answered, kRemoteFailure for an
// HTTP error status, kProtocol for a malformed response body.
class RemoteBackend final : public TryOnBackend,
                            public InpaintBackend,
                            public ParsingBackend,
                            public TriZoneBackend,
                            public JudgeBackend {
 public:
  explicit RemoteBackend(BackendEndpoint endpoint);

  RgbImage TryOn(const TryOnRequest& request, const CallContext& ctx) override;
  RgbImage Inpaint(const RgbImage& image, const BinaryMask& region,
                   const CallContext& ctx) override;
  LabelMap ParseHuman(const RgbImage& image, const CallContext& ctx) override;
  LabelMap Densepose(const RgbImage& image, const CallContext& ctx) override;
  TriZoneMask Predict(const RgbImage& model_image, const RgbImage& garment_image,
                      const CallContext& ctx) override;
  JudgeVerdict Judge(const RgbImage& triptych, std::string_view prompt,
                     const CallContext& ctx) override;

  const BackendEndpoint& endpoint() const { return endpoint_; }
  // Total HTTP attempts made by this client, across all calls.
  long attempts() const { return attempts_.load(); }

  // Exposed for protocol tests.
  nlohmann::json Post(Capability capability, const nlohmann::json& body,
                      const CallContext& ctx);

 private:
  LabelMap LabelCall(Capability capability, const RgbImage& image, const CallContext& ctx);

  BackendEndpoint endpoint_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::atomic<long> attempts_{0};
};

// Request builders and response readers shared by the client and by test
// servers; field names are the wire contract.
namespace wire {
nlohmann::json TryOnBody(const TryOnRequest& request);
TryOnRequest ReadTryOnBody(const nlohmann::json& body);
nlohmann::json ImageBody(const RgbImage& image);
nlohmann::json InpaintBody(const RgbImage& image, const BinaryMask& region);
nlohmann::json TriZoneBody(const RgbImage& model_image, const RgbImage& garment_image);
nlohmann::json JudgeBody(const RgbImage& triptych, std::string_view prompt);

nlohmann::json ImageReply(const RgbImage& image);
nlohmann::json LabelReply(const LabelMap& map);
nlohmann::json TriZoneReply(const TriZoneMask& mask);
nlohmann::json JudgeReply(std::string_view reply);

RgbImage ReadImage(const nlohmann::json& body, const char* field);
BinaryMask ReadMask(const nlohmann::json& body, const char* field);
LabelMap ReadLabels(const nlohmann::json& body);
TriZoneMask ReadTriZone(const nlohmann::json& body, const char* field);
}  // namespace wire

}  // namespace trizone

#endif  // TRIZONE_HTTP_BACKEND_HPP_
