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

#include "trizone/image_io.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "trizone/error.hpp"

namespace trizone {
namespace {

TEST(ImageIo, RgbRoundTrip) {
  std::mt19937_64 rng(1);
  const RgbImage img = testing::RandomImage(ImageGrid{7, 5}, rng);
  EXPECT_EQ(DecodeRgbPng(EncodeRgbPng(img)), img);
}

TEST(ImageIo, MaskRoundTrip) {
  std::mt19937_64 rng(2);
  const BinaryMask m = testing::RandomMask(ImageGrid{9, 11}, rng);
  EXPECT_EQ(DecodeMaskPng(EncodeMaskPng(m)), m);
}

TEST(ImageIo, TriZoneRoundTripKeepsCodes) {
  const TriZoneMask m(ImageGrid{3, 2}, {0, 1, 2, 2, 1, 0});
  const Bytes png = EncodeTriZonePng(m);
  ImageGrid grid;
  const auto raw = DecodeGrayPng(png, &grid);
  EXPECT_EQ(raw, (std::vector<std::uint8_t>{0, 1, 2, 2, 1, 0}));
  EXPECT_EQ(DecodeTriZonePng(png), m);
}

TEST(ImageIo, TriZoneDecodeRejectsBadCodes) {
  const std::vector<std::uint8_t> values = {0, 1, 5};
  const Bytes png = EncodeGrayPng(ImageGrid{3, 1}, values);
  try {
    DecodeTriZonePng(png);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
  }
}

TEST(ImageIo, GrayDecoderRejectsColor) {
  const RgbImage img(ImageGrid{2, 2}, Rgb{1, 2, 3});
  ImageGrid grid;
  EXPECT_THROW(DecodeGrayPng(EncodeRgbPng(img), &grid), Error);
}

TEST(ImageIo, GarbageIsFormatError) {
  const Bytes junk = {1, 2, 3, 4, 5};
  try {
    DecodeRgbPng(junk);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
  }
}

TEST(ImageIo, LabelMapWithSidecar) {
  testing::TempDir dir("io");
  const Palette palette({{0, "background"}, {4, "upper leg"}, {200, "x=y"}});
  const LabelMap map(ImageGrid{3, 1}, {0, 4, 200}, palette);
  WriteLabelMap(dir / "pm.png", map);
  EXPECT_TRUE(std::filesystem::exists(dir / "pm.palette.txt"));
  EXPECT_EQ(ReadLabelMap(dir / "pm.png"), map);
}

TEST(ImageIo, PaletteText) {
  const Palette p = ParsePalette("# comment\n\n0=background\n3=upper\n");
  EXPECT_EQ(p.label_of("upper"), 3);
  EXPECT_EQ(ParsePalette(FormatPalette(p)), p);
  EXPECT_THROW(ParsePalette("0=background\nthree=upper\n"), Error);
  EXPECT_THROW(ParsePalette("0=background\n300=upper\n"), Error);
}

TEST(ImageIo, MissingFileIsIoError) {
  try {
    ReadRgbImage("/nonexistent/dir/img.png");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ImageIo, Base64KnownVectors) {
  auto b = [](std::string_view s) { return Bytes(s.begin(), s.end()); };
  EXPECT_EQ(Base64Encode(b("")), "");
  EXPECT_EQ(Base64Encode(b("f")), "Zg==");
  EXPECT_EQ(Base64Encode(b("fo")), "Zm8=");
  EXPECT_EQ(Base64Encode(b("foobar")), "Zm9vYmFy");
  for (const char* s : {"", "f", "fo", "foo", "foob", "fooba", "foobar"}) {
    EXPECT_EQ(Base64Decode(Base64Encode(b(s))), b(s));
  }
  const Bytes zeros = {0, 0, 0, 0};
  EXPECT_EQ(Base64Decode(Base64Encode(zeros)), zeros);
  EXPECT_THROW(Base64Decode("not base64!"), Error);
}

TEST(ImageIo, Sha256KnownVector) {
  EXPECT_EQ(Sha256Hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace trizone
