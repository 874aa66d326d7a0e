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

#include "trizone/maskcore.hpp"

#include <algorithm>
#include <bit>

#include "trizone/error.hpp"

namespace trizone {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGridMismatch: return "GridMismatch";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kUnknownPart: return "UnknownPart";
    case ErrorCode::kOverlap: return "OverlapError";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kProtocol: return "Protocol";
    case ErrorCode::kRemoteFailure: return "RemoteFailure";
    case ErrorCode::kUnparseableReply: return "UnparseableReply";
    case ErrorCode::kRoutingMismatch: return "RoutingMismatch";
    case ErrorCode::kStageGating: return "StageGating";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kDivergence: return "Divergence";
  }
  return "Unknown";
}

ImageGrid MakeGrid(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid must be at least 1x1, got " + std::to_string(width) +
                    "x" + std::to_string(height));
  }
  return ImageGrid{width, height};
}

void RequireSameGrid(const ImageGrid& a, const ImageGrid& b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kGridMismatch,
                std::string(what) + ": " + std::to_string(a.width) + "x" +
                    std::to_string(a.height) + " vs " +
                    std::to_string(b.width) + "x" + std::to_string(b.height));
  }
}

// ---------------------------------------------------------------------------
// RgbImage

RgbImage::RgbImage(ImageGrid grid, Rgb fill) : grid_(MakeGrid(grid.width, grid.height)) {
  pixels_.resize(grid_.area() * 3);
  for (std::size_t i = 0; i < grid_.area(); ++i) {
    pixels_[3 * i] = fill.r;
    pixels_[3 * i + 1] = fill.g;
    pixels_[3 * i + 2] = fill.b;
  }
}

RgbImage::RgbImage(ImageGrid grid, std::vector<std::uint8_t> pixels)
    : grid_(MakeGrid(grid.width, grid.height)), pixels_(std::move(pixels)) {
  if (pixels_.size() != grid_.area() * 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "RGB buffer holds " + std::to_string(pixels_.size()) +
                    " bytes, expected " + std::to_string(grid_.area() * 3));
  }
}

Rgb RgbImage::at(int row, int col) const {
  const std::size_t i = 3 * grid_.index(row, col);
  return Rgb{pixels_[i], pixels_[i + 1], pixels_[i + 2]};
}

void RgbImage::set(int row, int col, Rgb value) {
  const std::size_t i = 3 * grid_.index(row, col);
  pixels_[i] = value.r;
  pixels_[i + 1] = value.g;
  pixels_[i + 2] = value.b;
}

// ---------------------------------------------------------------------------
// BinaryMask

BinaryMask::BinaryMask(ImageGrid grid, bool fill) : grid_(MakeGrid(grid.width, grid.height)) {
  words_.assign((grid_.area() + 63) / 64, fill ? ~std::uint64_t{0} : 0);
  clear_tail();
}

void BinaryMask::set(std::size_t i, bool value) {
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

std::size_t BinaryMask::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool BinaryMask::none() const {
  return std::all_of(words_.begin(), words_.end(),
                     [](std::uint64_t w) { return w == 0; });
}

void BinaryMask::clear_tail() {
  const std::size_t used = grid_.area() & 63;
  if (used != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << used) - 1;
  }
}

struct MaskOps {
  template <typename Op>
  static BinaryMask Combine(const BinaryMask& a, const BinaryMask& b, Op op) {
    RequireSameGrid(a.grid(), b.grid(), "mask operands");
    BinaryMask out(a.grid());
    for (std::size_t i = 0; i < out.words_.size(); ++i) {
      out.words_[i] = op(a.words_[i], b.words_[i]);
    }
    out.clear_tail();
    return out;
  }

  static BinaryMask Complement(const BinaryMask& a) {
    BinaryMask out(a.grid());
    for (std::size_t i = 0; i < out.words_.size(); ++i) out.words_[i] = ~a.words_[i];
    out.clear_tail();
    return out;
  }
};

BinaryMask MaskUnion(const BinaryMask& a, const BinaryMask& b) {
  return MaskOps::Combine(a, b, [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

BinaryMask MaskIntersect(const BinaryMask& a, const BinaryMask& b) {
  return MaskOps::Combine(a, b, [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

BinaryMask MaskDifference(const BinaryMask& a, const BinaryMask& b) {
  return MaskOps::Combine(a, b, [](std::uint64_t x, std::uint64_t y) { return x & ~y; });
}

BinaryMask MaskComplement(const BinaryMask& a) { return MaskOps::Complement(a); }

bool IsSubset(const BinaryMask& inner, const BinaryMask& outer) {
  return MaskDifference(inner, outer).none();
}

bool Disjoint(const BinaryMask& a, const BinaryMask& b) {
  return MaskIntersect(a, b).none();
}

// ---------------------------------------------------------------------------
// Palette / LabelMap

Palette::Palette(std::map<std::uint8_t, std::string> entries)
    : entries_(std::move(entries)) {
  for (const auto& [label, name] : entries_) {
    if (name.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "palette label " + std::to_string(label) + " has an empty name");
    }
    for (const auto& [other_label, other_name] : entries_) {
      if (other_label != label && other_name == name) {
        throw Error(ErrorCode::kInvalidArgument,
                    "palette class '" + name + "' is declared twice");
      }
    }
  }
}

std::optional<std::uint8_t> Palette::find(const std::string& name) const {
  for (const auto& [label, entry] : entries_) {
    if (entry == name) return label;
  }
  return std::nullopt;
}

std::uint8_t Palette::label_of(const std::string& name) const {
  if (auto label = find(name)) return *label;
  throw Error(ErrorCode::kUnknownClass, "class '" + name + "' not in palette");
}

LabelMap::LabelMap(ImageGrid grid, std::vector<std::uint8_t> labels, Palette palette)
    : grid_(MakeGrid(grid.width, grid.height)),
      labels_(std::move(labels)),
      palette_(std::move(palette)) {
  if (labels_.size() != grid_.area()) {
    throw Error(ErrorCode::kInvalidArgument,
                "label buffer holds " + std::to_string(labels_.size()) +
                    " entries, expected " + std::to_string(grid_.area()));
  }
  if (!palette_.contains(0)) {
    throw Error(ErrorCode::kInvalidArgument, "palette must declare background label 0");
  }
  std::array<bool, 256> seen{};
  for (std::uint8_t label : labels_) seen[label] = true;
  for (int label = 0; label < 256; ++label) {
    if (seen[label] && !palette_.contains(static_cast<std::uint8_t>(label))) {
      throw Error(ErrorCode::kUnknownClass,
                  "label " + std::to_string(label) + " missing from palette");
    }
  }
}

BinaryMask ExtractClassMask(const LabelMap& map, const std::string& class_name) {
  const std::uint8_t target = map.palette().label_of(class_name);
  BinaryMask out(map.grid());
  const auto labels = map.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == target) out.set(i);
  }
  return out;
}

BinaryMask ForegroundMask(const LabelMap& map) {
  BinaryMask out(map.grid());
  const auto labels = map.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0) out.set(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// TriZoneMask

const char* ZoneName(Zone zone) {
  switch (zone) {
    case Zone::kRecon: return "recon";
    case Zone::kImagi: return "imagi";
    case Zone::kTryon: return "tryon";
  }
  return "?";
}

TriZoneMask::TriZoneMask(ImageGrid grid, Zone fill)
    : grid_(MakeGrid(grid.width, grid.height)),
      codes_(grid_.area(), static_cast<std::uint8_t>(fill)) {}

TriZoneMask::TriZoneMask(ImageGrid grid, std::vector<std::uint8_t> codes)
    : grid_(MakeGrid(grid.width, grid.height)), codes_(std::move(codes)) {
  if (codes_.size() != grid_.area()) {
    throw Error(ErrorCode::kInvalidArgument,
                "zone buffer holds " + std::to_string(codes_.size()) +
                    " entries, expected " + std::to_string(grid_.area()));
  }
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i] > 2) {
      throw Error(ErrorCode::kFormat, "invalid zone code " + std::to_string(codes_[i]) +
                                          " at pixel " + std::to_string(i));
    }
  }
}

BinaryMask TriZoneMask::zone_mask(Zone zone) const {
  BinaryMask out(grid_);
  const auto code = static_cast<std::uint8_t>(zone);
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (codes_[i] == code) out.set(i);
  }
  return out;
}

ZoneCounts TriZoneMask::counts() const {
  ZoneCounts c;
  for (std::uint8_t code : codes_) {
    switch (static_cast<Zone>(code)) {
      case Zone::kRecon: ++c.recon; break;
      case Zone::kImagi: ++c.imagi; break;
      case Zone::kTryon: ++c.tryon; break;
    }
  }
  return c;
}

TriZoneMask AssembleTriZone(const BinaryMask& tryon, const BinaryMask& imagi) {
  RequireSameGrid(tryon.grid(), imagi.grid(), "tri-zone inputs");
  const BinaryMask overlap = MaskIntersect(tryon, imagi);
  if (overlap.any()) {
    throw Error(ErrorCode::kOverlap, std::to_string(overlap.count()) +
                                         " pixels are both try-on and imagination");
  }
  std::vector<std::uint8_t> codes(tryon.grid().area(),
                                  static_cast<std::uint8_t>(Zone::kRecon));
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (tryon.test(i)) {
      codes[i] = static_cast<std::uint8_t>(Zone::kTryon);
    } else if (imagi.test(i)) {
      codes[i] = static_cast<std::uint8_t>(Zone::kImagi);
    }
  }
  return TriZoneMask(tryon.grid(), std::move(codes));
}

std::optional<Box> BoundingBox(const BinaryMask& mask) {
  const ImageGrid& g = mask.grid();
  std::optional<Box> box;
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (!mask.test(r, c)) continue;
      if (!box) {
        box = Box{r, c, r, c};
      } else {
        box->top = std::min(box->top, r);
        box->left = std::min(box->left, c);
        box->bottom = std::max(box->bottom, r);
        box->right = std::max(box->right, c);
      }
    }
  }
  return box;
}

}  // namespace trizone
