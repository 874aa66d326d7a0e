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

#ifndef TRIZONE_MASKCORE_HPP_
#define TRIZONE_MASKCORE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trizone {

struct ImageGrid {
  int width = 1;
  int height = 1;

  std::size_t area() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(col);
  }
  bool contains(int row, int col) const {
    return row >= 0 && col >= 0 && row < height && col < width;
  }
  friend bool operator==(const ImageGrid&, const ImageGrid&) = default;
};

// Throws kInvalidArgument unless width and height are both positive.
ImageGrid MakeGrid(int width, int height);

// Throws kGridMismatch naming `what` when the grids differ.
void RequireSameGrid(const ImageGrid& a, const ImageGrid& b,
                     const char* what = "operands");

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

class RgbImage {
 public:
  RgbImage() = default;
  explicit RgbImage(ImageGrid grid, Rgb fill = {});
  // `pixels` holds interleaved RGB triples in row-major order.
  RgbImage(ImageGrid grid, std::vector<std::uint8_t> pixels);

  const ImageGrid& grid() const { return grid_; }
  Rgb at(int row, int col) const;
  void set(int row, int col, Rgb value);
  std::span<const std::uint8_t> bytes() const { return pixels_; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  ImageGrid grid_;
  std::vector<std::uint8_t> pixels_ = std::vector<std::uint8_t>(3, 0);
};

// Per-pixel boolean raster stored as a packed bitset. Bits past the last
// pixel in the final word are always zero.
class BinaryMask {
 public:
  BinaryMask() = default;
  explicit BinaryMask(ImageGrid grid, bool fill = false);

  static BinaryMask Empty(ImageGrid grid) { return BinaryMask(grid, false); }
  static BinaryMask Full(ImageGrid grid) { return BinaryMask(grid, true); }

  const ImageGrid& grid() const { return grid_; }
  bool test(int row, int col) const { return test(grid_.index(row, col)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(int row, int col, bool value = true) {
    set(grid_.index(row, col), value);
  }
  void set(std::size_t i, bool value = true);

  std::size_t count() const;
  bool none() const;
  bool any() const { return !none(); }

  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  friend struct MaskOps;
  void clear_tail();

  ImageGrid grid_;
  std::vector<std::uint64_t> words_ = std::vector<std::uint64_t>(1, 0);
};

// Label -> class name. Label 0 is reserved for the background class.
class Palette {
 public:
  Palette() = default;
  explicit Palette(std::map<std::uint8_t, std::string> entries);

  const std::map<std::uint8_t, std::string>& entries() const { return entries_; }
  bool contains(std::uint8_t label) const { return entries_.count(label) != 0; }
  std::optional<std::uint8_t> find(const std::string& name) const;
  // Throws kUnknownClass.
  std::uint8_t label_of(const std::string& name) const;

  friend bool operator==(const Palette&, const Palette&) = default;

 private:
  std::map<std::uint8_t, std::string> entries_;
};

class LabelMap {
 public:
  LabelMap() = default;
  // Validates that every label is present in the palette and that the
  // palette declares label 0.
  LabelMap(ImageGrid grid, std::vector<std::uint8_t> labels, Palette palette);

  const ImageGrid& grid() const { return grid_; }
  std::uint8_t at(int row, int col) const { return labels_[grid_.index(row, col)]; }
  std::span<const std::uint8_t> labels() const { return labels_; }
  const Palette& palette() const { return palette_; }

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  ImageGrid grid_;
  std::vector<std::uint8_t> labels_ = std::vector<std::uint8_t>(1, 0);
  Palette palette_ = Palette({{0, "background"}});
};

// Serialized codes are fixed: RECON=0, IMAGI=1, TRYON=2.
enum class Zone : std::uint8_t { kRecon = 0, kImagi = 1, kTryon = 2 };

const char* ZoneName(Zone zone);

struct ZoneCounts {
  std::size_t tryon = 0;
  std::size_t recon = 0;
  std::size_t imagi = 0;
  friend bool operator==(const ZoneCounts&, const ZoneCounts&) = default;
};

// Exactly one zone per pixel. Only constructible from codes in {0,1,2}.
class TriZoneMask {
 public:
  TriZoneMask() = default;
  explicit TriZoneMask(ImageGrid grid, Zone fill = Zone::kRecon);
  // Throws kFormat on any code outside {0,1,2}.
  TriZoneMask(ImageGrid grid, std::vector<std::uint8_t> codes);

  const ImageGrid& grid() const { return grid_; }
  Zone at(int row, int col) const {
    return static_cast<Zone>(codes_[grid_.index(row, col)]);
  }
  std::span<const std::uint8_t> codes() const { return codes_; }

  BinaryMask zone_mask(Zone zone) const;
  ZoneCounts counts() const;

  friend bool operator==(const TriZoneMask&, const TriZoneMask&) = default;

 private:
  ImageGrid grid_;
  std::vector<std::uint8_t> codes_ = std::vector<std::uint8_t>(1, 0);
};

struct Box {
  int top = 0;
  int left = 0;
  int bottom = 0;
  int right = 0;
  int height() const { return bottom - top + 1; }
  int width() const { return right - left + 1; }
  friend bool operator==(const Box&, const Box&) = default;
};

BinaryMask ExtractClassMask(const LabelMap& map, const std::string& class_name);
BinaryMask ForegroundMask(const LabelMap& map);

BinaryMask MaskUnion(const BinaryMask& a, const BinaryMask& b);
BinaryMask MaskIntersect(const BinaryMask& a, const BinaryMask& b);
BinaryMask MaskDifference(const BinaryMask& a, const BinaryMask& b);
BinaryMask MaskComplement(const BinaryMask& a);

bool IsSubset(const BinaryMask& inner, const BinaryMask& outer);
bool Disjoint(const BinaryMask& a, const BinaryMask& b);

// TRYON where `tryon` is set, IMAGI where `imagi` is set, RECON elsewhere.
// Throws kOverlap when the two inputs share a pixel.
TriZoneMask AssembleTriZone(const BinaryMask& tryon, const BinaryMask& imagi);

std::optional<Box> BoundingBox(const BinaryMask& mask);

}  // namespace trizone

#endif  // TRIZONE_MASKCORE_HPP_
