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

#include "trizone/evalkit.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "test_util.hpp"
#include "trizone/error.hpp"
#include "trizone/image_io.hpp"
#include "trizone/mock_world.hpp"

namespace trizone {
namespace {

const Rgb kWhite{255, 255, 255};

RgbImage Crop(const RgbImage& img, int left, int width, int height) {
  RgbImage out(ImageGrid{width, height});
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) out.set(r, c, img.at(r, left + c));
  }
  return out;
}

TEST(Splice, EqualPanels) {
  std::mt19937_64 rng(1);
  const ImageGrid g{4, 4};
  const RgbImage a = testing::RandomImage(g, rng), b = testing::RandomImage(g, rng),
                 c = testing::RandomImage(g, rng);
  const RgbImage t = SpliceTriptych(a, b, c);
  EXPECT_EQ(t.grid(), (ImageGrid{12, 4}));
  EXPECT_EQ(Crop(t, 0, 4, 4), a);
  EXPECT_EQ(Crop(t, 4, 4, 4), b);
  EXPECT_EQ(Crop(t, 8, 4, 4), c);
}

TEST(Splice, PadsShortPanelAtBottom) {
  std::mt19937_64 rng(2);
  const RgbImage a = testing::RandomImage({4, 4}, rng), b = testing::RandomImage({4, 2}, rng),
                 c = testing::RandomImage({4, 4}, rng);
  const RgbImage t = SpliceTriptych(a, b, c);
  EXPECT_EQ(t.grid(), (ImageGrid{12, 4}));
  EXPECT_EQ(Crop(t, 4, 4, 2), b);
  for (int r = 2; r < 4; ++r) {
    for (int col = 4; col < 8; ++col) EXPECT_EQ(t.at(r, col), kWhite);
  }
  EXPECT_EQ(Crop(t, 8, 4, 4), c);
}

TEST(Splice, ResizeToHeight) {
  std::mt19937_64 rng(3);
  const RgbImage img = testing::RandomImage({6, 4}, rng);
  EXPECT_EQ(ResizeToHeight(img, 4), img);
  const RgbImage up = ResizeToHeight(img, 8);
  EXPECT_EQ(up.grid(), (ImageGrid{12, 8}));
  EXPECT_EQ(up.at(0, 0), img.at(0, 0));
  EXPECT_EQ(up.at(7, 11), img.at(3, 5));
  EXPECT_EQ(up.at(3, 5), img.at(1, 2));
  EXPECT_THROW(ResizeToHeight(img, 0), Error);
}

TEST(Prompt, MatchesGoldenFile) {
  const std::string golden =
      testing::ReadAll(std::string(TRIZONE_TEST_DATA_DIR) + "/golden/acc_qwen_prompt.txt");
  EXPECT_EQ(AccQwenPrompt(), golden);
  EXPECT_EQ(AccQwenPrompt().size(), 557u);
  // The source text uses a left single quotation mark in "model's".
  EXPECT_NE(AccQwenPrompt().find("replace the model‘s garment in the left-hand image"),
            std::string_view::npos);
  const std::string_view tail = "Reply \"reasonable\" if it is, and \"unreasonable\" if not.";
  ASSERT_GE(AccQwenPrompt().size(), tail.size());
  EXPECT_EQ(AccQwenPrompt().substr(AccQwenPrompt().size() - tail.size()), tail);
  EXPECT_EQ(AccQwenPrompt().data(), AccQwenPrompt().data());
}

EvalCase Case(const std::string& id, const char* pc, const char* pg) {
  static const FineCategoryMap fine;
  const RgbImage img(ImageGrid{2, 2});
  return EvalCase{id, img, img, img, fine.Parse(pc), fine.Parse(pg)};
}

TEST(Acc, ThreeOfFour) {
  mock::ScriptedJudge judge({{"a", "reasonable"}, {"b", "Reasonable."}, {"c", "reasonable"},
                             {"d", "unreasonable"}});
  const std::vector<EvalCase> cases = {Case("a", "upper/short", "upper/long"),
                                       Case("b", "upper/short", "upper/long"),
                                       Case("c", "upper/short", "upper/long"),
                                       Case("d", "upper/short", "upper/long")};
  const AccReport r = EvaluateAcc(cases, judge);
  EXPECT_EQ(r.total, 4u);
  EXPECT_EQ(r.judged, 4u);
  EXPECT_EQ(r.reasonable, 3u);
  EXPECT_DOUBLE_EQ(*r.acc, 0.75);
  // Order does not matter.
  std::vector<EvalCase> reversed(cases.rbegin(), cases.rend());
  EXPECT_DOUBLE_EQ(*EvaluateAcc(reversed, judge, {1, {}}).acc, 0.75);
}

TEST(Acc, ZeroCases) {
  mock::ScriptedJudge judge(std::map<std::string, std::string>{});
  const AccReport r = EvaluateAcc({}, judge);
  EXPECT_EQ(r.total, 0u);
  EXPECT_FALSE(r.acc.has_value());
  EXPECT_NE(FormatAccReport(r).find("undefined"), std::string::npos);
  EXPECT_TRUE(AccReportToJson(r)["acc"].is_null());
}

TEST(Acc, PerCategoryHandTally) {
  // upper/short <- dress/long: R R U  -> 2/3
  // lower/long  <- dress/short: U U   -> 0/2
  // dress/long  <- upper/short: R, one unparseable, one missing -> 1/1
  mock::ScriptedJudge judge({{"1", "reasonable"}, {"2", "it is reasonable"}, {"3", "unreasonable"},
                             {"4", "UNREASONABLE"}, {"5", "unreasonable."}, {"6", "Reasonable"},
                             {"7", "no idea"}});
  const std::vector<EvalCase> cases = {
      Case("1", "upper/short", "dress/long"), Case("2", "upper/short", "dress/long"),
      Case("3", "upper/short", "dress/long"), Case("4", "lower/long", "dress/short"),
      Case("5", "lower/long", "dress/short"), Case("6", "dress/long", "upper/short"),
      Case("7", "dress/long", "upper/short"), Case("8", "dress/long", "upper/short")};
  const AccReport r = EvaluateAcc(cases, judge, {3, {}});
  EXPECT_EQ(r.total, 8u);
  EXPECT_EQ(r.judged, 6u);
  EXPECT_EQ(r.failures, 2u);
  EXPECT_EQ(r.judged + r.failures, r.total);
  EXPECT_DOUBLE_EQ(*r.acc, 3.0 / 6.0);
  static const FineCategoryMap fine;
  auto tally = [&](const char* pc, const char* pg) {
    return r.per_category.at({fine.Parse(pc), fine.Parse(pg)});
  };
  EXPECT_DOUBLE_EQ(*tally("upper/short", "dress/long").fraction(), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*tally("lower/long", "dress/short").fraction(), 0.0);
  EXPECT_DOUBLE_EQ(*tally("dress/long", "upper/short").fraction(), 1.0);
  EXPECT_EQ(r.failure_reasons.count("7"), 1u);
  EXPECT_NE(r.failure_reasons.at("8").find("Timeout"), std::string::npos);
}

TEST(Acc, DuplicateIdsRejected) {
  mock::ScriptedJudge judge(std::map<std::string, std::string>{{"a", "reasonable"}});
  EXPECT_THROW(EvaluateAcc({Case("a", "upper/short", "upper/short"), Case("a", "upper/short", "upper/short")}, judge),
               Error);
}

TEST(Acc, JudgeSeesPromptAndTriptych) {
  struct Spy final : JudgeBackend {
    std::vector<ImageGrid> grids;
    std::string prompt;
    std::mutex mu;
    JudgeVerdict Judge(const RgbImage& t, std::string_view p, const CallContext&) override {
      std::lock_guard lock(mu);
      grids.push_back(t.grid());
      prompt = p;
      return {Verdict::kReasonable, "reasonable"};
    }
  } spy;
  EvalCase c = Case("x", "upper/short", "upper/short");
  c.garment_image = RgbImage(ImageGrid{3, 1});
  EvaluateAcc({c}, spy);
  EXPECT_EQ(spy.grids.at(0), (ImageGrid{7, 2}));
  EXPECT_EQ(spy.prompt, AccQwenPrompt());
  EvaluateAcc({c}, spy, {1, 4});
  EXPECT_EQ(spy.grids.at(1), (ImageGrid{4 + 12 + 4, 4}));
}

TEST(Acc, CasesAndScriptFiles) {
  testing::TempDir dir("eval");
  const RgbImage img(ImageGrid{3, 3}, Rgb{1, 2, 3});
  WriteRgbImage(dir / "m.png", img);
  WriteTextFile(dir / "cases.jsonl",
                R"({"id":"c1","model":"m.png","garment":"m.png","result":"m.png","pc":"upper/short","pg":"dress/long"})"
                "\n");
  const auto cases = LoadEvalCases(dir / "cases.jsonl");
  ASSERT_EQ(cases.size(), 1u);
  EXPECT_EQ(cases[0].result_image, img);
  WriteTextFile(dir / "bad.jsonl", R"({"id":"c1"})");
  EXPECT_THROW(LoadEvalCases(dir / "bad.jsonl"), Error);

  const auto script = ParseJudgeScript("# header\n\nc1 It is reasonable.\nc2 unreasonable\n");
  EXPECT_EQ(script.size(), 2u);
  EXPECT_EQ(script.at("c1"), "It is reasonable.");
}

// Straight-line SSIM: 2-D Gaussian weights, per-window moments.
double ReferenceSsim(const RgbImage& a, const RgbImage& b, int win, double sigma) {
  const ImageGrid g = a.grid();
  auto luma = [](Rgb p) { return 0.299 * p.r + 0.587 * p.g + 0.114 * p.b; };
  std::vector<double> w1(win);
  double s = 0;
  for (int i = 0; i < win; ++i) {
    const double d = i - (win - 1) / 2.0;
    s += (w1[i] = std::exp(-d * d / (2 * sigma * sigma)));
  }
  const double c1 = (0.01 * 255) * (0.01 * 255), c2 = (0.03 * 255) * (0.03 * 255);
  double total = 0;
  int count = 0;
  for (int top = 0; top + win <= g.height; ++top) {
    for (int left = 0; left + win <= g.width; ++left) {
      double mx = 0, my = 0;
      for (int i = 0; i < win; ++i) {
        for (int j = 0; j < win; ++j) {
          const double w = w1[i] * w1[j] / (s * s);
          mx += w * luma(a.at(top + i, left + j));
          my += w * luma(b.at(top + i, left + j));
        }
      }
      double vx = 0, vy = 0, cov = 0;
      for (int i = 0; i < win; ++i) {
        for (int j = 0; j < win; ++j) {
          const double w = w1[i] * w1[j] / (s * s);
          const double dx = luma(a.at(top + i, left + j)) - mx;
          const double dy = luma(b.at(top + i, left + j)) - my;
          vx += w * dx * dx;
          vy += w * dy * dy;
          cov += w * dx * dy;
        }
      }
      total += (2 * mx * my + c1) * (2 * cov + c2) / ((mx * mx + my * my + c1) * (vx + vy + c2));
      ++count;
    }
  }
  return total / count;
}

TEST(Ssim, IdenticalImagesGiveExactlyOne) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const RgbImage x = testing::RandomImage({20 + trial, 17}, rng);
    EXPECT_EQ(Ssim(x, x), 1.0);
  }
  EXPECT_EQ(Ssim(RgbImage({11, 11}), RgbImage({11, 11})), 1.0);
}

TEST(Ssim, MatchesDirectReference) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const RgbImage a = testing::RandomImage({24, 19}, rng), b = testing::RandomImage({24, 19}, rng);
    const double got = Ssim(a, b);
    EXPECT_NEAR(got, ReferenceSsim(a, b, 11, 1.5), 1e-6);
    EXPECT_EQ(got, Ssim(b, a));
    EXPECT_GE(got, -1.0);
    EXPECT_LE(got, 1.0);
  }
  // Related images: a noisy copy scores high.
  const RgbImage base = mock::RenderFigure({24, 32}, mock::RandomStyle({Category::kDress, Length::kLong}, 1), 2).image;
  RgbImage noisy = base;
  std::uniform_int_distribution<int> n(-4, 4);
  for (int r = 0; r < 32; ++r) {
    for (int c = 0; c < 24; ++c) {
      Rgb p = noisy.at(r, c);
      p.r = static_cast<std::uint8_t>(std::clamp(p.r + n(rng), 0, 255));
      noisy.set(r, c, p);
    }
  }
  EXPECT_NEAR(Ssim(base, noisy, {7, 1.0}), ReferenceSsim(base, noisy, 7, 1.0), 1e-6);
  EXPECT_GT(Ssim(base, noisy), 0.9);
}

TEST(Ssim, Errors) {
  try {
    Ssim(RgbImage({8, 8}), RgbImage({8, 8}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  try {
    Ssim(RgbImage({12, 12}), RgbImage({12, 13}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridMismatch);
  }
}

TEST(Ssim, TapsAndLuma) {
  const auto taps = GaussianTaps(11, 1.5);
  double s = 0;
  for (double t : taps) s += t;
  EXPECT_NEAR(s, 1.0, 1e-15);
  EXPECT_EQ(taps[0], taps[10]);
  EXPECT_DOUBLE_EQ(Luminance(Rgb{255, 255, 255}), 255.0);
  EXPECT_DOUBLE_EQ(Luminance(Rgb{100, 0, 0}), 29.9);
}

}  // namespace
}  // namespace trizone
