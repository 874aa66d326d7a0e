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

#include "trizone/mock_world.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "trizone/error.hpp"
#include "trizone/random.hpp"

namespace trizone::mock {
namespace {

constexpr Rgb kHair{60, 40, 30};
constexpr Rgb kShoes{20, 20, 20};
constexpr Rgb kUpper{200, 40, 40};
constexpr Rgb kDress{40, 60, 200};
constexpr Rgb kLower{40, 150, 60};

enum ParseLabel : std::uint8_t {
  kBg = 0, kSkinLabel = 1, kHairLabel = 2, kUpperLabel = 3,
  kDressLabel = 4, kLowerLabel = 5, kShoesLabel = 6,
};

enum PartLabel : std::uint8_t {
  kTorso = 1, kUpperArm = 2, kLowerArm = 3, kUpperLeg = 4,
  kLowerLeg = 5, kHead = 6, kFeet = 7,
};

// Half-open pixel rectangle built from grid fractions.
struct Rect {
  int r0, r1, c0, c1;
};

int Frac(double f, int extent) {
  return static_cast<int>(std::floor(f * extent + 0.5));
}

Rect R(const ImageGrid& g, double top, double bottom, double left, double right) {
  return Rect{Frac(top, g.height), Frac(bottom, g.height), Frac(left, g.width),
              Frac(right, g.width)};
}

template <typename Fn>
void ForEach(const ImageGrid& g, Rect rect, Fn fn) {
  const int r0 = std::clamp(rect.r0, 0, g.height);
  const int r1 = std::clamp(rect.r1, 0, g.height);
  const int c0 = std::clamp(rect.c0, 0, g.width);
  const int c1 = std::clamp(rect.c1, 0, g.width);
  for (int r = r0; r < r1; ++r) {
    for (int c = c0; c < c1; ++c) fn(r, c);
  }
}

Rgb CategoryColor(Category category) {
  switch (category) {
    case Category::kUpper: return kUpper;
    case Category::kDress: return kDress;
    case Category::kLower: return kLower;
  }
  return kUpper;
}

std::uint8_t CategoryLabel(Category category) {
  switch (category) {
    case Category::kUpper: return kUpperLabel;
    case Category::kDress: return kDressLabel;
    case Category::kLower: return kLowerLabel;
  }
  return kUpperLabel;
}

Rgb Shade(Rgb base, int offset) {
  auto ch = [offset](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::clamp(static_cast<int>(v) + offset, 0, 255));
  };
  return Rgb{ch(base.r), ch(base.g), ch(base.b)};
}

// Pieces of a garment in worn position. The last rectangle's bottom edge
// (and every rectangle flagged as hem) moves with hem_offset.
std::vector<Rect> GarmentRects(const ImageGrid& g, const GarmentStyle& style) {
  const bool is_long = style.spec.length == Length::kLong;
  std::vector<Rect> rects;
  switch (style.spec.category) {
    case Category::kUpper: {
      Rect body = R(g, 0.20, is_long ? 0.62 : 0.46, 0.32, 0.68);
      body.r1 += style.hem_offset;
      const double sleeve = is_long ? 0.56 : 0.30;
      rects = {body, R(g, 0.20, sleeve, 0.22, 0.32), R(g, 0.20, sleeve, 0.68, 0.78)};
      break;
    }
    case Category::kDress: {
      Rect skirt = R(g, 0.52, is_long ? 0.88 : 0.68, 0.30, 0.70);
      skirt.r1 += style.hem_offset;
      rects = {R(g, 0.20, 0.52, 0.32, 0.68), skirt, R(g, 0.20, 0.28, 0.22, 0.32),
               R(g, 0.20, 0.28, 0.68, 0.78)};
      break;
    }
    case Category::kLower: {
      Rect legs = R(g, 0.50, is_long ? 0.90 : 0.64, 0.33, 0.67);
      legs.r1 += style.hem_offset;
      rects = {legs};
      break;
    }
  }
  return rects;
}

struct BodyPart {
  Rect rect;
  std::uint8_t part;
};

std::vector<BodyPart> BodyTemplate(const ImageGrid& g) {
  return {
      {R(g, 0.04, 0.20, 0.40, 0.60), kHead},
      {R(g, 0.20, 0.52, 0.32, 0.68), kTorso},
      {R(g, 0.20, 0.40, 0.22, 0.32), kUpperArm},
      {R(g, 0.20, 0.40, 0.68, 0.78), kUpperArm},
      {R(g, 0.40, 0.58, 0.22, 0.32), kLowerArm},
      {R(g, 0.40, 0.58, 0.68, 0.78), kLowerArm},
      {R(g, 0.52, 0.74, 0.34, 0.49), kUpperLeg},
      {R(g, 0.52, 0.74, 0.51, 0.66), kUpperLeg},
      {R(g, 0.74, 0.92, 0.34, 0.49), kLowerLeg},
      {R(g, 0.74, 0.92, 0.51, 0.66), kLowerLeg},
      {R(g, 0.92, 0.97, 0.32, 0.49), kFeet},
      {R(g, 0.92, 0.97, 0.51, 0.68), kFeet},
  };
}

std::vector<std::uint8_t> TemplateParts(const ImageGrid& g) {
  std::vector<std::uint8_t> parts(g.area(), 0);
  for (const auto& bp : BodyTemplate(g)) {
    ForEach(g, bp.rect, [&](int r, int c) { parts[g.index(r, c)] = bp.part; });
  }
  return parts;
}

void Paint(RgbImage& image, std::vector<std::uint8_t>& labels, Rect rect, Rgb color,
           std::uint8_t label) {
  const ImageGrid& g = image.grid();
  ForEach(g, rect, [&](int r, int c) {
    image.set(r, c, color);
    labels[g.index(r, c)] = label;
  });
}

std::uint32_t Dist2(Rgb a, Rgb b) {
  const int dr = a.r - b.r;
  const int dg = a.g - b.g;
  const int db = a.b - b.b;
  return static_cast<std::uint32_t>(dr * dr + dg * dg + db * db);
}

void Tag(const CallContext& ctx, const std::string& name) {
  if (ctx.provenance != nullptr) *ctx.provenance = Provenance{"mock", name, 0.0, 1};
}

}  // namespace

const Palette& ParsingPalette() {
  static const Palette kPalette({{kBg, "background"},
                                 {kSkinLabel, "skin"},
                                 {kHairLabel, "hair"},
                                 {kUpperLabel, "upper"},
                                 {kDressLabel, "dress"},
                                 {kLowerLabel, "lower"},
                                 {kShoesLabel, "shoes"}});
  return kPalette;
}

const Palette& DensePosePalette() {
  static const Palette kPalette({{0, "background"},
                                 {kTorso, "torso"},
                                 {kUpperArm, "upper_arm"},
                                 {kLowerArm, "lower_arm"},
                                 {kUpperLeg, "upper_leg"},
                                 {kLowerLeg, "lower_leg"},
                                 {kHead, "head"},
                                 {kFeet, "feet"}});
  return kPalette;
}

std::string GarmentClass(Category category) {
  return std::string(CategoryName(category));
}

GarmentStyle RandomStyle(const GarmentSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  GarmentStyle style;
  style.spec = spec;
  style.hem_offset = static_cast<int>(rng.below(3)) - 1;
  style.shade_offset = static_cast<int>(rng.below(31)) - 15;
  return style;
}

Figure RenderFigure(const ImageGrid& grid, const GarmentStyle& worn, std::uint64_t seed) {
  RgbImage image(grid, kBackground);
  std::vector<std::uint8_t> labels(grid.area(), kBg);

  for (const auto& bp : BodyTemplate(grid)) {
    Paint(image, labels, bp.rect, bp.part == kFeet ? kShoes : kSkin,
          bp.part == kFeet ? kShoesLabel : kSkinLabel);
  }
  Rect hair = R(grid, 0.04, 0.09, 0.40, 0.60);
  Paint(image, labels, hair, kHair, kHairLabel);

  // The worn garment is painted last so it is never hidden.
  std::vector<GarmentStyle> layers;
  Rng rng(seed);
  const auto other_length = rng.below(2) == 0 ? Length::kShort : Length::kLong;
  switch (worn.spec.category) {
    case Category::kUpper:
      layers = {RandomStyle({Category::kLower, other_length}, rng.next()), worn};
      break;
    case Category::kLower:
      layers = {RandomStyle({Category::kUpper, other_length}, rng.next()), worn};
      break;
    case Category::kDress:
      layers = {worn};
      break;
  }
  for (const auto& layer : layers) {
    const Rgb color = Shade(CategoryColor(layer.spec.category), layer.shade_offset);
    for (const Rect& rect : GarmentRects(grid, layer)) {
      Paint(image, labels, rect, color, CategoryLabel(layer.spec.category));
    }
  }

  LabelMap parsing(grid, labels, ParsingPalette());
  LabelMap densepose = DenseposeByTemplate(image);
  return Figure{std::move(image), std::move(parsing), std::move(densepose)};
}

RgbImage RenderGarment(const ImageGrid& grid, const GarmentStyle& style) {
  RgbImage image(grid, kBackground);
  const Rgb color = Shade(CategoryColor(style.spec.category), style.shade_offset);
  for (const Rect& rect : GarmentRects(grid, style)) {
    ForEach(grid, rect, [&](int r, int c) { image.set(r, c, color); });
  }
  return image;
}

BinaryMask GarmentShape(const RgbImage& garment_image) {
  const ImageGrid& g = garment_image.grid();
  const Rgb corner = garment_image.at(0, 0);
  BinaryMask shape(g);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (garment_image.at(r, c) != corner) shape.set(r, c);
    }
  }
  return shape;
}

LabelMap ParseByColor(const RgbImage& image) {
  static constexpr std::array<std::pair<Rgb, std::uint8_t>, 6> kRefs = {{
      {kSkin, kSkinLabel}, {kHair, kHairLabel}, {kUpper, kUpperLabel},
      {kDress, kDressLabel}, {kLower, kLowerLabel}, {kShoes, kShoesLabel},
  }};
  const ImageGrid& g = image.grid();
  const Rgb corner = image.at(0, 0);
  std::vector<std::uint8_t> labels(g.area(), kBg);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      const Rgb px = image.at(r, c);
      if (px == corner) continue;
      std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
      for (const auto& [ref, label] : kRefs) {
        const std::uint32_t d = Dist2(px, ref);
        if (d < best) {
          best = d;
          labels[g.index(r, c)] = label;
        }
      }
    }
  }
  return LabelMap(g, std::move(labels), ParsingPalette());
}

LabelMap DenseposeByTemplate(const RgbImage& image) {
  const ImageGrid& g = image.grid();
  const Rgb corner = image.at(0, 0);
  std::vector<std::uint8_t> parts = TemplateParts(g);
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (image.at(r, c) == corner) parts[g.index(r, c)] = 0;
    }
  }
  return LabelMap(g, std::move(parts), DensePosePalette());
}

RgbImage TryOnMock::TryOn(const TryOnRequest& request, const CallContext& ctx) {
  request.Validate();
  const BinaryMask shape = GarmentShape(request.garment_image);
  BinaryMask generated = shape;
  if (const auto* m = std::get_if<BinaryMask>(&request.mask)) {
    generated = *m;
  } else if (const auto* t = std::get_if<TriZoneMask>(&request.mask)) {
    generated = MaskUnion(t->zone_mask(Zone::kTryon), t->zone_mask(Zone::kImagi));
  }
  RgbImage out = request.model_image;
  const ImageGrid& g = out.grid();
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      if (!generated.test(r, c)) continue;
      out.set(r, c, shape.test(r, c) ? request.garment_image.at(r, c) : kSkin);
    }
  }
  Tag(ctx, name_);
  return out;
}

RgbImage InpaintMock::Inpaint(const RgbImage& image, const BinaryMask& region,
                          const CallContext& ctx) {
  RequireSameGrid(image.grid(), region.grid(), "inpaint image vs region");
  RgbImage out = image;
  const ImageGrid& g = image.grid();
  for (int c = 0; c < g.width; ++c) {
    for (int r = 0; r < g.height; ++r) {
      if (!region.test(r, c)) continue;
      Rgb fill = kBackground;
      bool found = false;
      for (int up = r - 1; up >= 0 && !found; --up) {
        if (!region.test(up, c)) {
          fill = image.at(up, c);
          found = true;
        }
      }
      for (int down = r + 1; down < g.height && !found; ++down) {
        if (!region.test(down, c)) {
          fill = image.at(down, c);
          found = true;
        }
      }
      out.set(r, c, fill);
    }
  }
  Tag(ctx, "mock-inpaint");
  return out;
}

LabelMap ParsingMock::ParseHuman(const RgbImage& image, const CallContext& ctx) {
  Tag(ctx, "mock-parse");
  return ParseByColor(image);
}

LabelMap ParsingMock::Densepose(const RgbImage& image, const CallContext& ctx) {
  Tag(ctx, "mock-densepose");
  return DenseposeByTemplate(image);
}

TriZoneMask TriZoneMock::Predict(const RgbImage& model_image, const RgbImage& garment_image,
                             const CallContext& ctx) {
  RequireSameGrid(model_image.grid(), garment_image.grid(), "model vs garment image");
  const BinaryMask shape = GarmentShape(garment_image);
  const LabelMap parsing = ParseByColor(model_image);
  BinaryMask existing(model_image.grid());
  for (Category cat : {Category::kUpper, Category::kDress, Category::kLower}) {
    existing = MaskUnion(existing, ExtractClassMask(parsing, GarmentClass(cat)));
  }
  Tag(ctx, "mock-trizone");
  return AssembleTriZone(shape, MaskDifference(existing, shape));
}

JudgeVerdict ScriptedJudge::Judge(const RgbImage&, std::string_view prompt,
                                  const CallContext& ctx) {
  if (prompt.empty()) throw Error(ErrorCode::kInvalidArgument, "judge prompt is empty");
  const auto it = replies_.find(ctx.key);
  if (it == replies_.end()) {
    throw Error(ErrorCode::kTimeout, "no scripted reply for '" + ctx.key + "'");
  }
  Tag(ctx, "mock-judge");
  return ParseJudgeReply(it->second);
}

BackendSet MakeBackendSet() {
  BackendSet set;
  set.tryon = std::make_shared<mock::TryOnMock>("mock-idm");
  set.inpaint = std::make_shared<mock::InpaintMock>();
  set.parsing = std::make_shared<mock::ParsingMock>();
  set.trizone = std::make_shared<mock::TriZoneMock>();
  set.tryon_round2 = std::make_shared<mock::TryOnMock>("mock-crossvton");
  set.round1_trained = true;
  return set;
}

}  // namespace trizone::mock
