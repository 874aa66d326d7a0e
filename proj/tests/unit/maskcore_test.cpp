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

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "trizone/error.hpp"

namespace trizone {
namespace {

using testing::RandomMask;

LabelMap RandomLabelMap(const ImageGrid& grid, const Palette& palette, std::mt19937_64& rng) {
  std::vector<std::uint8_t> labels;
  std::vector<std::uint8_t> keys;
  for (const auto& [label, name] : palette.entries()) keys.push_back(label);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  for (std::size_t i = 0; i < grid.area(); ++i) labels.push_back(keys[pick(rng)]);
  return LabelMap(grid, labels, palette);
}

TEST(MaskCore, GridValidation) {
  EXPECT_THROW(MakeGrid(0, 3), Error);
  EXPECT_THROW(MakeGrid(3, -1), Error);
  EXPECT_EQ(MakeGrid(4, 2).area(), 8u);
}

TEST(MaskCore, ExtractClassMaskDiagonal) {
  const Palette palette({{0, "background"}, {1, "garment"}});
  const LabelMap map(ImageGrid{2, 2}, {1, 0, 0, 1}, palette);
  EXPECT_EQ(ExtractClassMask(map, "garment"), testing::MaskFromRows({"10", "01"}));
}

TEST(MaskCore, ExtractDeclaredButAbsentClassIsEmpty) {
  const Palette palette({{0, "background"}, {1, "garment"}, {2, "skin"}});
  const LabelMap map(ImageGrid{3, 2}, {0, 1, 0, 1, 0, 0}, palette);
  EXPECT_TRUE(ExtractClassMask(map, "skin").none());
}

TEST(MaskCore, ExtractUnknownClassThrows) {
  const LabelMap map(ImageGrid{1, 1}, {0}, Palette({{0, "background"}}));
  try {
    ExtractClassMask(map, "dress");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownClass);
  }
}

TEST(MaskCore, ExtractMatchesPixelScan) {
  std::mt19937_64 rng(11);
  const Palette palette({{0, "background"}, {3, "upper"}, {7, "skin"}});
  for (int trial = 0; trial < 50; ++trial) {
    const LabelMap map = RandomLabelMap(ImageGrid{4, 4}, palette, rng);
    BinaryMask tiled(map.grid());
    for (const auto& [label, name] : palette.entries()) {
      const BinaryMask m = ExtractClassMask(map, name);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) EXPECT_EQ(m.test(r, c), map.at(r, c) == label);
      }
      EXPECT_TRUE(Disjoint(tiled, m));
      tiled = MaskUnion(tiled, m);
    }
    EXPECT_EQ(tiled, BinaryMask::Full(map.grid()));
  }
}

TEST(MaskCore, ForegroundMask) {
  const Palette palette({{0, "background"}, {1, "skin"}});
  EXPECT_TRUE(ForegroundMask(LabelMap(ImageGrid{3, 3}, std::vector<std::uint8_t>(9, 0), palette)).none());
  EXPECT_EQ(ForegroundMask(LabelMap(ImageGrid{3, 3}, std::vector<std::uint8_t>(9, 1), palette)),
            BinaryMask::Full(ImageGrid{3, 3}));
  std::mt19937_64 rng(5);
  const Palette many({{0, "background"}, {1, "a"}, {2, "b"}, {9, "c"}});
  for (int trial = 0; trial < 20; ++trial) {
    const LabelMap map = RandomLabelMap(ImageGrid{8, 8}, many, rng);
    EXPECT_EQ(ForegroundMask(map), MaskComplement(ExtractClassMask(map, "background")));
  }
}

TEST(MaskCore, LabelMapRejectsUndeclaredLabels) {
  EXPECT_THROW(LabelMap(ImageGrid{2, 1}, {0, 4}, Palette({{0, "background"}})), Error);
  EXPECT_THROW(LabelMap(ImageGrid{2, 1}, {1, 1}, Palette({{1, "skin"}})), Error);
  EXPECT_THROW(LabelMap(ImageGrid{2, 2}, {0, 0}, Palette({{0, "background"}})), Error);
}

TEST(MaskCore, PaletteRejectsDuplicateNames) {
  EXPECT_THROW(Palette({{0, "background"}, {1, "x"}, {2, "x"}}), Error);
}

TEST(MaskCore, SetLaws) {
  std::mt19937_64 rng(3);
  const ImageGrid grid{16, 16};
  for (int trial = 0; trial < 10; ++trial) {
    const BinaryMask a = RandomMask(grid, rng);
    EXPECT_EQ(MaskUnion(a, MaskComplement(a)), BinaryMask::Full(grid));
    EXPECT_TRUE(MaskDifference(a, a).none());
  }
}

TEST(MaskCore, DeMorganAgainstPixelOracle) {
  std::mt19937_64 rng(17);
  const ImageGrid grid{16, 16};
  for (int trial = 0; trial < 1000; ++trial) {
    const BinaryMask a = RandomMask(grid, rng), b = RandomMask(grid, rng);
    const BinaryMask u = MaskUnion(a, b), i = MaskIntersect(a, b), d = MaskDifference(a, b);
    const BinaryMask not_u = MaskComplement(u);
    EXPECT_EQ(not_u, MaskIntersect(MaskComplement(a), MaskComplement(b)));
    EXPECT_EQ(MaskComplement(i), MaskUnion(MaskComplement(a), MaskComplement(b)));
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 16; ++c) {
        const bool x = a.test(r, c), y = b.test(r, c);
        ASSERT_EQ(u.test(r, c), x || y);
        ASSERT_EQ(i.test(r, c), x && y);
        ASSERT_EQ(d.test(r, c), x && !y);
        ASSERT_EQ(not_u.test(r, c), !(x || y));
      }
    }
  }
}

TEST(MaskCore, OddSizedGridsKeepTailClear) {
  // 7x9 = 63 bits: the complement must not set bits past the last pixel.
  const ImageGrid grid{7, 9};
  const BinaryMask full = MaskComplement(BinaryMask::Empty(grid));
  EXPECT_EQ(full.count(), 63u);
  EXPECT_EQ(full, BinaryMask::Full(grid));
  const ImageGrid grid2{13, 11};
  EXPECT_EQ(MaskComplement(BinaryMask::Empty(grid2)).count(), 143u);
}

TEST(MaskCore, OperationsRejectGridMismatch) {
  const BinaryMask a(ImageGrid{4, 4}), b(ImageGrid{4, 5});
  for (auto op : {&MaskUnion, &MaskIntersect, &MaskDifference}) {
    try {
      op(a, b);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kGridMismatch);
    }
  }
}

TEST(MaskCore, AssembleTriZone) {
  const ImageGrid grid{5, 4};
  const TriZoneMask recon = AssembleTriZone(BinaryMask(grid), BinaryMask(grid));
  EXPECT_EQ(recon.counts(), (ZoneCounts{0, 20, 0}));
  const TriZoneMask tryon = AssembleTriZone(BinaryMask::Full(grid), BinaryMask(grid));
  EXPECT_EQ(tryon.counts(), (ZoneCounts{20, 0, 0}));

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMask t = RandomMask(ImageGrid{16, 16}, rng, 0.3);
    const BinaryMask i = MaskDifference(RandomMask(ImageGrid{16, 16}, rng, 0.3), t);
    const TriZoneMask m = AssembleTriZone(t, i);
    std::size_t nt = 0, ni = 0, nr = 0;
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 16; ++c) {
        if (t.test(r, c)) {
          ++nt;
          EXPECT_EQ(m.at(r, c), Zone::kTryon);
        } else if (i.test(r, c)) {
          ++ni;
          EXPECT_EQ(m.at(r, c), Zone::kImagi);
        } else {
          ++nr;
          EXPECT_EQ(m.at(r, c), Zone::kRecon);
        }
      }
    }
    EXPECT_EQ(m.counts(), (ZoneCounts{nt, nr, ni}));
    EXPECT_EQ(m.zone_mask(Zone::kTryon), t);
    EXPECT_EQ(m.zone_mask(Zone::kImagi), i);
  }
}

TEST(MaskCore, AssembleRejectsOverlap) {
  const BinaryMask a = testing::MaskFromRows({"110", "000"});
  const BinaryMask b = testing::MaskFromRows({"011", "000"});
  try {
    AssembleTriZone(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverlap);
  }
}

TEST(MaskCore, TriZoneCodesAreValidated) {
  EXPECT_NO_THROW(TriZoneMask(ImageGrid{3, 1}, {0, 1, 2}));
  try {
    TriZoneMask(ImageGrid{3, 1}, {0, 3, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
  }
}

TEST(MaskCore, BoundingBox) {
  BinaryMask single(ImageGrid{6, 6});
  single.set(2, 3);
  EXPECT_EQ(BoundingBox(single), (Box{2, 3, 2, 3}));
  EXPECT_FALSE(BoundingBox(BinaryMask(ImageGrid{6, 6})).has_value());

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const BinaryMask m = RandomMask(ImageGrid{13, 9}, rng, 0.05);
    int top = 99, left = 99, bottom = -1, right = -1;
    for (int r = 0; r < 9; ++r) {
      for (int c = 0; c < 13; ++c) {
        if (!m.test(r, c)) continue;
        top = std::min(top, r);
        bottom = std::max(bottom, r);
        left = std::min(left, c);
        right = std::max(right, c);
      }
    }
    const auto box = BoundingBox(m);
    if (bottom < 0) {
      EXPECT_FALSE(box.has_value());
    } else {
      EXPECT_EQ(box, (Box{top, left, bottom, right}));
    }
  }
}

TEST(MaskCore, OperationsArePure) {
  std::mt19937_64 rng(31);
  const BinaryMask a = RandomMask(ImageGrid{10, 10}, rng), b = RandomMask(ImageGrid{10, 10}, rng);
  const BinaryMask a0 = a, b0 = b;
  (void)MaskUnion(a, b);
  (void)MaskIntersect(a, b);
  (void)MaskDifference(a, b);
  (void)MaskComplement(a);
  EXPECT_EQ(a, a0);
  EXPECT_EQ(b, b0);
}

}  // namespace
}  // namespace trizone
