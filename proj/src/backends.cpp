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

#include "trizone/backends.hpp"

#include <algorithm>
#include <cctype>

#include "trizone/error.hpp"

namespace trizone {

std::string_view CapabilityPath(Capability capability) {
  switch (capability) {
    case Capability::kTryOn: return "/tryon";
    case Capability::kInpaint: return "/inpaint";
    case Capability::kParse: return "/parse";
    case Capability::kDensepose: return "/densepose";
    case Capability::kTriZone: return "/trizone";
    case Capability::kJudge: return "/judge";
  }
  return "/";
}

std::string_view MaskKindName(MaskKind kind) {
  switch (kind) {
    case MaskKind::kBinary: return "binary";
    case MaskKind::kTriZone: return "trizone";
    case MaskKind::kNone: return "none";
  }
  return "?";
}

MaskKind TryOnRequest::kind() const {
  if (std::holds_alternative<BinaryMask>(mask)) return MaskKind::kBinary;
  if (std::holds_alternative<TriZoneMask>(mask)) return MaskKind::kTriZone;
  return MaskKind::kNone;
}

void TryOnRequest::Validate() const {
  RequireSameGrid(model_image.grid(), garment_image.grid(), "model vs garment image");
  if (const auto* m = std::get_if<BinaryMask>(&mask)) {
    RequireSameGrid(model_image.grid(), m->grid(), "model image vs mask");
  } else if (const auto* t = std::get_if<TriZoneMask>(&mask)) {
    RequireSameGrid(model_image.grid(), t->grid(), "model image vs mask");
  }
}

std::string_view VerdictName(Verdict verdict) {
  return verdict == Verdict::kReasonable ? "reasonable" : "unreasonable";
}

JudgeVerdict ParseJudgeReply(std::string_view reply) {
  std::string text(reply);
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto first = text.find_first_not_of(" \t\r\n");
  const auto last = text.find_last_not_of(" \t\r\n");
  text = first == std::string::npos ? "" : text.substr(first, last - first + 1);

  if (text.find("unreasonable") != std::string::npos) {
    return {Verdict::kUnreasonable, std::string(reply)};
  }
  if (text.find("reasonable") != std::string::npos) {
    return {Verdict::kReasonable, std::string(reply)};
  }
  throw Error(ErrorCode::kUnparseableReply,
              "judge reply has no verdict: '" + std::string(reply) + "'");
}

}  // namespace trizone
