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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <sstream>
#include <thread>

#include "trizone/error.hpp"
#include "trizone/image_io.hpp"

namespace trizone {

RgbImage SpliceTriptych(const RgbImage& model, const RgbImage& garment, const RgbImage& result) {
  const RgbImage* panels[3] = {&model, &garment, &result};
  int width = 0, height = 0;
  for (const RgbImage* p : panels) {
    width += p->grid().width;
    height = std::max(height, p->grid().height);
  }
  RgbImage out(ImageGrid{width, height}, Rgb{255, 255, 255});
  int left = 0;
  for (const RgbImage* p : panels) {
    const ImageGrid& g = p->grid();
    for (int r = 0; r < g.height; ++r) {
      for (int c = 0; c < g.width; ++c) out.set(r, left + c, p->at(r, c));
    }
    left += g.width;
  }
  return out;
}

RgbImage ResizeToHeight(const RgbImage& image, int height) {
  if (height < 1) throw Error(ErrorCode::kInvalidArgument, "panel height must be >= 1");
  const ImageGrid& g = image.grid();
  const int width = std::max(
      1, static_cast<int>(std::lround(static_cast<double>(g.width) * height / g.height)));
  RgbImage out(ImageGrid{width, height});
  for (int r = 0; r < height; ++r) {
    const int sr = std::min(g.height - 1, static_cast<int>((r + 0.5) * g.height / height));
    for (int c = 0; c < width; ++c) {
      const int sc = std::min(g.width - 1, static_cast<int>((c + 0.5) * g.width / width));
      out.set(r, c, image.at(sr, sc));
    }
  }
  return out;
}

std::string_view AccQwenPrompt() {
  static constexpr char kPrompt[] =
      "I used the virtual try-on algorithm to replace the model"
      "\xE2\x80\x98"
      "s garment in the left-hand image with the garment in the middle. Then produced the "
      "output on the right. If the overall model image on the right is reasonable and matches "
      "the type and style of the middle-image clothing, it"
      "\xE2\x80\x99"
      "s considered reasonable. If the output image is the same as the input model image or "
      "the garment of output is not consistent with the middle image, the output is "
      "unreasonable. You only need to judge if it's reasonable. Reply \"reasonable\" if it "
      "is, and \"unreasonable\" if not.";
  return {kPrompt, sizeof(kPrompt) - 1};
}

std::optional<double> CategoryTally::fraction() const {
  if (judged == 0) return std::nullopt;
  return static_cast<double>(reasonable) / static_cast<double>(judged);
}

namespace {

bool IsJudgeFailure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTimeout:
    case ErrorCode::kProtocol:
    case ErrorCode::kRemoteFailure:
    case ErrorCode::kUnparseableReply:
      return true;
    default:
      return false;
  }
}

struct Outcome {
  std::optional<Verdict> verdict;
  std::string failure;
};

}  // namespace

AccReport EvaluateAcc(const std::vector<EvalCase>& cases, JudgeBackend& judge,
                      const EvalOptions& options) {
  std::set<std::string> ids;
  for (const auto& c : cases) {
    if (!ids.insert(c.id).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate evaluation case id '" + c.id + "'");
    }
  }

  std::vector<Outcome> outcomes(cases.size());
  std::vector<std::exception_ptr> errors(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      const EvalCase& c = cases[i];
      try {
        const RgbImage triptych =
            options.panel_height
                ? SpliceTriptych(ResizeToHeight(c.model_image, *options.panel_height),
                                 ResizeToHeight(c.garment_image, *options.panel_height),
                                 ResizeToHeight(c.result_image, *options.panel_height))
                : SpliceTriptych(c.model_image, c.garment_image, c.result_image);
        outcomes[i].verdict = judge.Judge(triptych, AccQwenPrompt(), CallContext{c.id, nullptr}).verdict;
      } catch (const Error& e) {
        if (!IsJudgeFailure(e.code())) {
          errors[i] = std::current_exception();
        } else {
          outcomes[i].failure = e.what();
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int threads = std::clamp<int>(options.max_in_flight, 1,
                                      std::max<int>(1, static_cast<int>(cases.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Tallied in case order so the report does not depend on completion order.
  AccReport report;
  report.total = cases.size();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.verdict) {
      ++report.failures;
      report.failure_reasons[cases[i].id] = o.failure;
      continue;
    }
    CategoryTally& tally = report.per_category[{cases[i].pc, cases[i].pg}];
    ++report.judged;
    ++tally.judged;
    if (*o.verdict == Verdict::kReasonable) {
      ++report.reasonable;
      ++tally.reasonable;
    }
  }
  if (report.judged > 0) {
    report.acc = static_cast<double>(report.reasonable) / static_cast<double>(report.judged);
  }
  return report;
}

std::vector<EvalCase> LoadEvalCases(const std::filesystem::path& path) {
  const FineCategoryMap specs;
  std::istringstream in(ReadTextFile(path));
  const auto base = path.parent_path();
  std::vector<EvalCase> cases;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    for (const char* key : {"id", "model", "garment", "result", "pc", "pg"}) {
      if (j.is_discarded() || !j.is_object() || !j.contains(key) || !j[key].is_string()) {
        throw Error(ErrorCode::kFormat, path.string() + ":" + std::to_string(line_no) +
                                            ": missing string field '" + key + "'");
      }
    }
    EvalCase c;
    c.id = j["id"].get<std::string>();
    c.model_image = ReadRgbImage(base / j["model"].get<std::string>());
    c.garment_image = ReadRgbImage(base / j["garment"].get<std::string>());
    c.result_image = ReadRgbImage(base / j["result"].get<std::string>());
    c.pc = specs.Parse(j["pc"].get<std::string>());
    c.pg = specs.Parse(j["pg"].get<std::string>());
    cases.push_back(std::move(c));
  }
  return cases;
}

std::map<std::string, std::string> ParseJudgeScript(std::string_view text) {
  std::map<std::string, std::string> replies;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    const auto id_end = line.find_first_of(" \t", start);
    const std::string id = line.substr(start, id_end - start);
    std::string reply;
    if (id_end != std::string::npos) {
      const auto reply_start = line.find_first_not_of(" \t", id_end);
      if (reply_start != std::string::npos) reply = line.substr(reply_start);
    }
    while (!reply.empty() && (reply.back() == '\r' || reply.back() == ' ')) reply.pop_back();
    replies[id] = reply;
  }
  return replies;
}

std::string FormatAccReport(const AccReport& report) {
  std::ostringstream out;
  out << "cases      " << report.total << "\n";
  out << "judged     " << report.judged << "\n";
  out << "reasonable " << report.reasonable << "\n";
  out << "failures   " << report.failures << "\n";
  out << "acc        ";
  if (report.acc) {
    out << *report.acc;
  } else {
    out << "undefined";
  }
  out << "\n";
  if (!report.per_category.empty()) {
    out << "\npc            pg            judged  reasonable  acc\n";
    for (const auto& [pair, tally] : report.per_category) {
      std::string pc = FormatSpec(pair.first), pg = FormatSpec(pair.second);
      pc.resize(std::max<std::size_t>(pc.size(), 12), ' ');
      pg.resize(std::max<std::size_t>(pg.size(), 12), ' ');
      out << pc << "  " << pg << "  " << tally.judged << "  " << tally.reasonable << "  "
          << tally.fraction().value_or(0.0) << "\n";
    }
  }
  return out.str();
}

nlohmann::ordered_json AccReportToJson(const AccReport& report) {
  nlohmann::ordered_json j;
  j["total"] = report.total;
  j["judged"] = report.judged;
  j["reasonable"] = report.reasonable;
  j["failures"] = report.failures;
  j["acc"] = report.acc ? nlohmann::ordered_json(*report.acc) : nlohmann::ordered_json(nullptr);
  nlohmann::ordered_json per = nlohmann::ordered_json::array();
  for (const auto& [pair, tally] : report.per_category) {
    nlohmann::ordered_json row;
    row["pc"] = FormatSpec(pair.first);
    row["pg"] = FormatSpec(pair.second);
    row["judged"] = tally.judged;
    row["reasonable"] = tally.reasonable;
    const auto f = tally.fraction();
    row["acc"] = f ? nlohmann::ordered_json(*f) : nlohmann::ordered_json(nullptr);
    per.push_back(row);
  }
  j["per_category"] = per;
  j["failure_reasons"] = report.failure_reasons;
  return j;
}

double Luminance(Rgb px) { return 0.299 * px.r + 0.587 * px.g + 0.114 * px.b; }

std::vector<double> GaussianTaps(int window, double sigma) {
  std::vector<double> taps(static_cast<std::size_t>(window));
  const double center = (window - 1) / 2.0;
  double total = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - center;
    taps[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

namespace {

// Valid-mode separable filtering of a height x width plane.
std::vector<double> Filter(const std::vector<double>& plane, int height, int width,
                           const std::vector<double>& taps) {
  const int w = static_cast<int>(taps.size());
  const int out_w = width - w + 1, out_h = height - w + 1;
  std::vector<double> horizontal(static_cast<std::size_t>(height * out_w));
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < out_w; ++c) {
      double s = 0.0;
      for (int k = 0; k < w; ++k) s += taps[k] * plane[r * width + c + k];
      horizontal[r * out_w + c] = s;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(out_h * out_w));
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      double s = 0.0;
      for (int k = 0; k < w; ++k) s += taps[k] * horizontal[(r + k) * out_w + c];
      out[r * out_w + c] = s;
    }
  }
  return out;
}

}  // namespace

double Ssim(const RgbImage& a, const RgbImage& b, const SsimOptions& options) {
  RequireSameGrid(a.grid(), b.grid(), "SSIM inputs");
  const ImageGrid& g = a.grid();
  if (options.window < 1 || options.window > g.width || options.window > g.height) {
    throw Error(ErrorCode::kInvalidArgument,
                "SSIM window " + std::to_string(options.window) + " does not fit a " +
                    std::to_string(g.width) + "x" + std::to_string(g.height) + " image");
  }
  if (!(options.sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");

  std::vector<double> x(g.area()), y(g.area()), xx(g.area()), yy(g.area()), xy(g.area());
  for (int r = 0; r < g.height; ++r) {
    for (int c = 0; c < g.width; ++c) {
      const std::size_t i = g.index(r, c);
      x[i] = Luminance(a.at(r, c));
      y[i] = Luminance(b.at(r, c));
      xx[i] = x[i] * x[i];
      yy[i] = y[i] * y[i];
      xy[i] = x[i] * y[i];
    }
  }
  const auto taps = GaussianTaps(options.window, options.sigma);
  const auto mx = Filter(x, g.height, g.width, taps);
  const auto my = Filter(y, g.height, g.width, taps);
  const auto exx = Filter(xx, g.height, g.width, taps);
  const auto eyy = Filter(yy, g.height, g.width, taps);
  const auto exy = Filter(xy, g.height, g.width, taps);

  const double c1 = std::pow(options.k1 * options.dynamic_range, 2);
  const double c2 = std::pow(options.k2 * options.dynamic_range, 2);
  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = exx[i] - mx[i] * mx[i];
    const double vy = eyy[i] - my[i] * my[i];
    const double cov = exy[i] - mx[i] * my[i];
    const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2);
    const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2);
    total += num / den;
  }
  return total / static_cast<double>(mx.size());
}

}  // namespace trizone
