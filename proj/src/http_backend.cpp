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

#include "trizone/http_backend.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "httplib.h"
#include "trizone/error.hpp"
#include "trizone/image_io.hpp"

namespace trizone {

using nlohmann::json;

void ValidateEndpoint(const BackendEndpoint& endpoint) {
  if (!(endpoint.timeout_seconds > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint timeout must be positive");
  }
  if (endpoint.retry_limit < 0) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint retry_limit must be >= 0");
  }
  if (endpoint.base_url.rfind("http://", 0) != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "endpoint URL must start with http://, got '" + endpoint.base_url + "'");
  }
}

namespace wire {
namespace {

std::string PngField(const Bytes& png) { return Base64Encode(png); }

Bytes FieldBytes(const json& body, const char* field) {
  if (!body.is_object() || !body.contains(field) || !body[field].is_string()) {
    throw Error(ErrorCode::kProtocol, std::string("missing string field '") + field + "'");
  }
  try {
    return Base64Decode(body[field].get<std::string>());
  } catch (const Error& e) {
    throw Error(ErrorCode::kProtocol, std::string("field '") + field + "': " + e.what());
  }
}

template <typename Fn>
auto Decode(const char* field, Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kProtocol) throw;
    throw Error(ErrorCode::kProtocol, std::string("field '") + field + "': " + e.what());
  }
}

}  // namespace

json ImageBody(const RgbImage& image) {
  return json{{"image", PngField(EncodeRgbPng(image))}};
}

json TryOnBody(const TryOnRequest& request) {
  json body;
  body["model_image"] = PngField(EncodeRgbPng(request.model_image));
  body["garment_image"] = PngField(EncodeRgbPng(request.garment_image));
  body["mask_kind"] = std::string(MaskKindName(request.kind()));
  if (const auto* m = std::get_if<BinaryMask>(&request.mask)) {
    body["mask"] = PngField(EncodeMaskPng(*m));
  } else if (const auto* t = std::get_if<TriZoneMask>(&request.mask)) {
    body["mask"] = PngField(EncodeTriZonePng(*t));
  } else {
    body["mask"] = nullptr;
  }
  return body;
}

TryOnRequest ReadTryOnBody(const json& body) {
  TryOnRequest request;
  request.model_image = ReadImage(body, "model_image");
  request.garment_image = ReadImage(body, "garment_image");
  const std::string kind = body.value("mask_kind", std::string("none"));
  if (kind == "binary") {
    request.mask = ReadMask(body, "mask");
  } else if (kind == "trizone") {
    request.mask = ReadTriZone(body, "mask");
  } else if (kind != "none") {
    throw Error(ErrorCode::kProtocol, "unknown mask_kind '" + kind + "'");
  }
  return request;
}

json InpaintBody(const RgbImage& image, const BinaryMask& region) {
  return json{{"image", PngField(EncodeRgbPng(image))},
              {"region", PngField(EncodeMaskPng(region))}};
}

json TriZoneBody(const RgbImage& model_image, const RgbImage& garment_image) {
  return json{{"model_image", PngField(EncodeRgbPng(model_image))},
              {"garment_image", PngField(EncodeRgbPng(garment_image))}};
}

json JudgeBody(const RgbImage& triptych, std::string_view prompt) {
  return json{{"image", PngField(EncodeRgbPng(triptych))}, {"prompt", std::string(prompt)}};
}

json ImageReply(const RgbImage& image) { return ImageBody(image); }

json LabelReply(const LabelMap& map) {
  json palette = json::object();
  for (const auto& [label, name] : map.palette().entries()) {
    palette[std::to_string(label)] = name;
  }
  return json{{"labels", PngField(EncodeGrayPng(map.grid(), map.labels()))},
              {"palette", palette}};
}

json TriZoneReply(const TriZoneMask& mask) {
  return json{{"trizone", PngField(EncodeTriZonePng(mask))}};
}

json JudgeReply(std::string_view reply) { return json{{"reply", std::string(reply)}}; }

RgbImage ReadImage(const json& body, const char* field) {
  const Bytes png = FieldBytes(body, field);
  return Decode(field, [&] { return DecodeRgbPng(png); });
}

BinaryMask ReadMask(const json& body, const char* field) {
  const Bytes png = FieldBytes(body, field);
  return Decode(field, [&] { return DecodeMaskPng(png); });
}

TriZoneMask ReadTriZone(const json& body, const char* field) {
  const Bytes png = FieldBytes(body, field);
  return Decode(field, [&] { return DecodeTriZonePng(png); });
}

LabelMap ReadLabels(const json& body) {
  const Bytes png = FieldBytes(body, "labels");
  if (!body.contains("palette") || !body["palette"].is_object()) {
    throw Error(ErrorCode::kProtocol, "missing object field 'palette'");
  }
  return Decode("labels", [&] {
    std::string text;
    for (const auto& [key, value] : body["palette"].items()) {
      if (!value.is_string()) throw Error(ErrorCode::kProtocol, "palette names must be strings");
      text += key + "=" + value.get<std::string>() + "\n";
    }
    ImageGrid grid;
    auto raw = DecodeGrayPng(png, &grid);
    return LabelMap(grid, std::move(raw), ParsePalette(text));
  });
}

}  // namespace wire

RemoteBackend::RemoteBackend(BackendEndpoint endpoint) : endpoint_(std::move(endpoint)) {
  ValidateEndpoint(endpoint_);
  const std::string& url = endpoint_.base_url;
  const auto path_start = url.find('/', std::string("http://").size());
  if (path_start == std::string::npos) {
    scheme_host_port_ = url;
  } else {
    scheme_host_port_ = url.substr(0, path_start);
    path_prefix_ = url.substr(path_start);
    while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  }
}

json RemoteBackend::Post(Capability capability, const json& body, const CallContext& ctx) {
  const std::string path = path_prefix_ + std::string(CapabilityPath(capability));
  // Serialized once; every retry sends exactly these bytes.
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!ctx.key.empty()) headers.emplace("Idempotency-Key", ctx.key);
  if (endpoint_.auth_token) {
    headers.emplace("Authorization", "Bearer " + *endpoint_.auth_token);
  }

  const auto seconds = static_cast<time_t>(endpoint_.timeout_seconds);
  const auto micros = static_cast<time_t>(
      std::llround((endpoint_.timeout_seconds - static_cast<double>(seconds)) * 1e6));

  const auto start = std::chrono::steady_clock::now();
  double backoff = endpoint_.backoff_seconds;
  std::string last_failure;
  bool last_was_status = false;
  int attempt = 0;
  for (; attempt <= endpoint_.retry_limit; ++attempt) {
    if (attempt > 0 && backoff > 0.0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
      backoff *= 2.0;
    }
    ++attempts_;
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);
    auto result = client.Post(path, headers, payload, "application/json");
    if (!result) {
      last_failure = "transport error: " + httplib::to_string(result.error());
      last_was_status = false;
      continue;
    }
    const int status = result->status;
    if (status >= 500) {
      last_failure = "HTTP " + std::to_string(status);
      last_was_status = true;
      continue;
    }
    if (status >= 400 || status < 200 || status >= 300) {
      throw Error(ErrorCode::kRemoteFailure,
                  path + " returned HTTP " + std::to_string(status) + ": " + result->body);
    }
    json reply = json::parse(result->body, nullptr, false);
    if (reply.is_discarded() || !reply.is_object()) {
      throw Error(ErrorCode::kProtocol, path + " returned a body that is not a JSON object");
    }
    if (ctx.provenance != nullptr) {
      const std::chrono::duration<double, std::milli> elapsed =
          std::chrono::steady_clock::now() - start;
      *ctx.provenance = Provenance{"remote", endpoint_.base_url + std::string(CapabilityPath(capability)),
                                   elapsed.count(), attempt + 1};
    }
    return reply;
  }
  const std::string message = path + " failed after " + std::to_string(attempt) +
                              " attempts (" + last_failure + ")";
  throw Error(last_was_status ? ErrorCode::kRemoteFailure : ErrorCode::kTimeout, message);
}

RgbImage RemoteBackend::TryOn(const TryOnRequest& request, const CallContext& ctx) {
  request.Validate();
  const json reply = Post(Capability::kTryOn, wire::TryOnBody(request), ctx);
  RgbImage out = wire::ReadImage(reply, "image");
  if (out.grid() != request.model_image.grid()) {
    throw Error(ErrorCode::kProtocol, "try-on result has a different grid");
  }
  return out;
}

RgbImage RemoteBackend::Inpaint(const RgbImage& image, const BinaryMask& region,
                                const CallContext& ctx) {
  RequireSameGrid(image.grid(), region.grid(), "inpaint image vs region");
  const json reply = Post(Capability::kInpaint, wire::InpaintBody(image, region), ctx);
  RgbImage out = wire::ReadImage(reply, "image");
  if (out.grid() != image.grid()) {
    throw Error(ErrorCode::kProtocol, "inpaint result has a different grid");
  }
  return out;
}

LabelMap RemoteBackend::LabelCall(Capability capability, const RgbImage& image,
                                  const CallContext& ctx) {
  const json reply = Post(capability, wire::ImageBody(image), ctx);
  LabelMap map = wire::ReadLabels(reply);
  if (map.grid() != image.grid()) {
    throw Error(ErrorCode::kProtocol, "label map has a different grid");
  }
  return map;
}

LabelMap RemoteBackend::ParseHuman(const RgbImage& image, const CallContext& ctx) {
  return LabelCall(Capability::kParse, image, ctx);
}

LabelMap RemoteBackend::Densepose(const RgbImage& image, const CallContext& ctx) {
  return LabelCall(Capability::kDensepose, image, ctx);
}

TriZoneMask RemoteBackend::Predict(const RgbImage& model_image, const RgbImage& garment_image,
                                   const CallContext& ctx) {
  RequireSameGrid(model_image.grid(), garment_image.grid(), "model vs garment image");
  const json reply =
      Post(Capability::kTriZone, wire::TriZoneBody(model_image, garment_image), ctx);
  TriZoneMask mask = wire::ReadTriZone(reply, "trizone");
  if (mask.grid() != model_image.grid()) {
    throw Error(ErrorCode::kProtocol, "tri-zone prediction has a different grid");
  }
  return mask;
}

JudgeVerdict RemoteBackend::Judge(const RgbImage& triptych, std::string_view prompt,
                                  const CallContext& ctx) {
  if (prompt.empty()) throw Error(ErrorCode::kInvalidArgument, "judge prompt is empty");
  const json reply = Post(Capability::kJudge, wire::JudgeBody(triptych, prompt), ctx);
  if (!reply.contains("reply") || !reply["reply"].is_string()) {
    throw Error(ErrorCode::kProtocol, "judge response lacks a string 'reply'");
  }
  return ParseJudgeReply(reply["reply"].get<std::string>());
}

}  // namespace trizone
