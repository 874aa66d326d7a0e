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

#include "trizone/garment.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "trizone/error.hpp"

namespace trizone {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<Length> ParseLength(const std::string& s) {
  if (s == "short") return Length::kShort;
  if (s == "long") return Length::kLong;
  return std::nullopt;
}

std::optional<Category> ParseCategory(const std::string& s) {
  if (s == "upper") return Category::kUpper;
  if (s == "dress") return Category::kDress;
  if (s == "lower") return Category::kLower;
  return std::nullopt;
}

}  // namespace

std::string_view CategoryName(Category category) {
  switch (category) {
    case Category::kUpper: return "upper";
    case Category::kDress: return "dress";
    case Category::kLower: return "lower";
  }
  return "?";
}

std::string_view LengthName(Length length) {
  return length == Length::kShort ? "short" : "long";
}

std::string FormatSpec(const GarmentSpec& spec) {
  return std::string(CategoryName(spec.category)) + "/" +
         std::string(LengthName(spec.length));
}

const std::array<GarmentSpec, 6>& AllSpecs() {
  static const std::array<GarmentSpec, 6> kSpecs = {{
      {Category::kUpper, Length::kShort},
      {Category::kUpper, Length::kLong},
      {Category::kDress, Length::kShort},
      {Category::kDress, Length::kLong},
      {Category::kLower, Length::kShort},
      {Category::kLower, Length::kLong},
  }};
  return kSpecs;
}

FineCategoryMap::FineCategoryMap()
    : table_{
          {"top", Category::kUpper},    {"tops", Category::kUpper},
          {"tshirt", Category::kUpper}, {"shirt", Category::kUpper},
          {"dress", Category::kDress},  {"dresses", Category::kDress},
          {"pants", Category::kLower},  {"skirt", Category::kLower},
          {"skirts", Category::kLower}, {"trousers", Category::kLower},
      } {}

GarmentSpec FineCategoryMap::Parse(std::string_view token) const {
  const std::string t = Lower(token);
  auto fail = [&]() -> GarmentSpec {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot parse garment spec '" + std::string(token) +
                    "' (expected category/length or fine-length)");
  };

  if (auto slash = t.find('/'); slash != std::string::npos) {
    const auto category = ParseCategory(t.substr(0, slash));
    const auto length = ParseLength(t.substr(slash + 1));
    if (!category || !length) return fail();
    return GarmentSpec{*category, *length};
  }

  const auto dash = t.find('-');
  if (dash == std::string::npos) return fail();
  std::string name = t.substr(0, dash);
  std::string len = t.substr(dash + 1);
  if (ParseLength(name) && !ParseLength(len)) std::swap(name, len);
  const auto length = ParseLength(len);
  if (!length) return fail();
  if (auto coarse = ParseCategory(name)) return GarmentSpec{*coarse, *length};
  auto it = table_.find(name);
  if (it == table_.end()) return fail();
  return GarmentSpec{it->second, *length};
}

}  // namespace trizone
