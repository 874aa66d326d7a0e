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

#ifndef TRIZONE_GARMENT_HPP_
#define TRIZONE_GARMENT_HPP_

#include <array>
#include <map>
#include <string>
#include <string_view>

namespace trizone {

enum class Category { kUpper = 0, kDress = 1, kLower = 2 };
enum class Length { kShort = 0, kLong = 1 };

struct GarmentSpec {
  Category category = Category::kUpper;
  Length length = Length::kShort;
  friend bool operator==(const GarmentSpec&, const GarmentSpec&) = default;
  friend auto operator<=>(const GarmentSpec&, const GarmentSpec&) = default;
};

std::string_view CategoryName(Category category);  // "upper" | "dress" | "lower"
std::string_view LengthName(Length length);        // "short" | "long"

// "upper/short" style token.
std::string FormatSpec(const GarmentSpec& spec);

// All six specs in table order: upper/short, upper/long, dress/short,
// dress/long, lower/short, lower/long.
const std::array<GarmentSpec, 6>& AllSpecs();

// Maps fine garment names (tops, dresses, pants, skirts, ...) onto the three
// coarse categories. The default table covers the usual benchmark names.
class FineCategoryMap {
 public:
  FineCategoryMap();
  explicit FineCategoryMap(std::map<std::string, Category> table)
      : table_(std::move(table)) {}

  const std::map<std::string, Category>& table() const { return table_; }

  // Accepts "category/length" ("upper/long") and fine "name-length"
  // ("skirt-long") or "length-name" ("long-skirt") tokens, case-insensitive.
  // Throws kInvalidArgument on anything else.
  GarmentSpec Parse(std::string_view token) const;

 private:
  std::map<std::string, Category> table_;
};

}  // namespace trizone

#endif  // TRIZONE_GARMENT_HPP_
