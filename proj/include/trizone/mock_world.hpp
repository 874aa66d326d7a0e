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

#ifndef TRIZONE_MOCK_WORLD_HPP_
#define TRIZONE_MOCK_WORLD_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "trizone/backends.hpp"
#include "trizone/garment.hpp"
#include "trizone/maskcore.hpp"

namespace trizone::mock {

// A procedural world of flat-colored figures. Every class has a reference
// color; garments are drawn in jittered shades of their category color, so
// a nearest-color rule recovers the labels exactly.
//
// Parsing classes: background, skin, hair, upper, dress, lower, shoes.
// Densepose parts: background, torso, upper_arm, lower_arm, upper_leg,
// lower_leg, head, feet.
const Palette& ParsingPalette();
const Palette& DensePosePalette();

// Parsing class that holds garments of this category.
std::string GarmentClass(Category category);

inline constexpr Rgb kBackground{255, 255, 255};
inline constexpr Rgb kSkin{230, 180, 150};

struct GarmentStyle {
  GarmentSpec spec;
  int hem_offset = 0;     // rows added to the hem, typically -1..1
  int shade_offset = 0;   // added to the category color, typically -15..15
};

// Draws a style from a seed: hem in {-1,0,1}, shade in [-15,15].
GarmentStyle RandomStyle(const GarmentSpec& spec, std::uint64_t seed);

struct Figure {
  RgbImage image;
  LabelMap parsing;
  LabelMap densepose;
};

// A model wearing `worn`; for upper and lower garments a complementary
// garment is added from `seed`, dresses are worn alone.
Figure RenderFigure(const ImageGrid& grid, const GarmentStyle& worn, std::uint64_t seed);

// The garment alone on a white background, in the pose it is worn.
RgbImage RenderGarment(const ImageGrid& grid, const GarmentStyle& style);

// Garment pixels of a flat garment image (everything that is not the corner
// color).
BinaryMask GarmentShape(const RgbImage& garment_image);

// Parsing by nearest class color, with the corner color as background.
LabelMap ParseByColor(const RgbImage& image);
// The body template restricted to the image foreground.
LabelMap DenseposeByTemplate(const RgbImage& image);

// Try-on: inside the generated area garment pixels are pasted and
// uncovered pixels become skin; outside it the model image is copied.
// Binary masks and the TRYON+IMAGI zones mark the generated area; with no
// mask the garment shape itself is used.
class TryOnMock final : public TryOnBackend {
 public:
  explicit TryOnMock(std::string name = "mock-tryon") : name_(std::move(name)) {}
  RgbImage TryOn(const TryOnRequest& request, const CallContext& ctx) override;

 private:
  std::string name_;
};

// Fills each region pixel with the nearest non-region color above it in
// the same column, falling back to below, then to white.
class InpaintMock final : public InpaintBackend {
 public:
  RgbImage Inpaint(const RgbImage& image, const BinaryMask& region,
                   const CallContext& ctx) override;
};

class ParsingMock final : public ParsingBackend {
 public:
  LabelMap ParseHuman(const RgbImage& image, const CallContext& ctx) override;
  LabelMap Densepose(const RgbImage& image, const CallContext& ctx) override;
};

// Stands in for a trained first stage: TRYON is the garment shape,
// IMAGI is the model's existing garment pixels outside it.
class TriZoneMock final : public TriZoneBackend {
 public:
  TriZoneMask Predict(const RgbImage& model_image, const RgbImage& garment_image,
                      const CallContext& ctx) override;
};

// Replies are looked up by the call key; unknown keys throw kTimeout so
// tests can script failures.
class ScriptedJudge final : public JudgeBackend {
 public:
  explicit ScriptedJudge(std::map<std::string, std::string> replies)
      : replies_(std::move(replies)) {}
  JudgeVerdict Judge(const RgbImage& triptych, std::string_view prompt,
                     const CallContext& ctx) override;

 private:
  std::map<std::string, std::string> replies_;
};

// A complete mock backend set, declared round-1 trained.
BackendSet MakeBackendSet();

}  // namespace trizone::mock

#endif  // TRIZONE_MOCK_WORLD_HPP_
