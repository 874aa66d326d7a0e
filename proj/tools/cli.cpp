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

#include "cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "trizone/config.hpp"
#include "trizone/error.hpp"
#include "trizone/evalkit.hpp"
#include "trizone/http_backend.hpp"
#include "trizone/image_io.hpp"
#include "trizone/manifest.hpp"
#include "trizone/maskadjust.hpp"
#include "trizone/mock_world.hpp"
#include "trizone/pipeline.hpp"
#include "trizone/routing.hpp"
#include "trizone/toy_training.hpp"
#include "trizone/zonealgebra.hpp"

namespace trizone::cli {

struct RouteOptions {
  std::string pc;
  std::string pg;
  bool table = false;
  bool json = false;
};

struct ConstructOptions {
  std::string config;
  std::string corpus;
  bool mock = false;
  std::string round = "all";
  std::uint64_t seed = 0;
  std::string out;
  bool resume = false;
  std::size_t stop_after = 0;
  int workers = 1;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
  CLI::Option* stop_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

struct ValidateOptions {
  std::string manifest;
  bool json = false;
};

struct PlanOptions {
  std::string corpus;
  bool mock = false;
  std::uint64_t seed = 0;
  std::string grid = "24x32";
  int variants = 2;
};

struct MakeCorpusOptions {
  std::string out;
  std::uint64_t seed = 0;
  std::string grid = "24x32";
  int variants = 2;
};

struct TriZoneOptions {
  int round = 1;
  std::string parsing;
  std::string garment_class = "upper";
  std::string gen;
  std::string fg;
  std::string pred;
  std::string grouping = "intersect-union";
  std::string out;
};

struct AdjustOptions {
  std::string mode;
  std::string gen;
  std::string densepose;
  std::string part = "upper_leg";
  double shrink_min = 0.15;
  double shrink_max = 0.45;
  std::uint64_t seed = 0;
  std::string out;
  std::string residual;
};

struct TrainOptions {
  std::size_t steps = 300;
  std::uint64_t seed = 0;
  std::size_t count = 200;
  std::string grid = "16x16";
  std::string dataset;
  std::string out;
};

struct EvalOptionsCli {
  std::string cases;
  std::string mock_judge;
  std::string config;
  std::string report;
  int max_in_flight = 4;
  int panel_height = 0;  // 0 keeps the original sizes
};

struct SsimOptionsCli {
  std::string a;
  std::string b;
  int window = 11;
  double sigma = 1.5;
};

struct Options {
  RouteOptions route;
  ConstructOptions construct;
  ValidateOptions validate;
  PlanOptions plan;
  MakeCorpusOptions make_corpus;
  TriZoneOptions trizone;
  AdjustOptions adjust;
  TrainOptions train;
  EvalOptionsCli eval;
  SsimOptionsCli ssim;
};

namespace {

void AddRoute(CLI::App& app, RouteOptions& o) {
  auto* cmd = app.add_subcommand("route", "Show the construction method for a garment pair");
  cmd->add_option("--pc", o.pc, "Garment to construct, e.g. upper/long or skirt-long");
  cmd->add_option("--pg", o.pg, "Garment worn in the ground-truth image");
  cmd->add_flag("--table", o.table, "Print all 36 cells");
  cmd->add_flag("--json", o.json, "One JSON record per line");
}

void AddConstruct(CLI::App& app, ConstructOptions& o) {
  auto* cmd = app.add_subcommand("construct", "Build quadruplet manifests");
  cmd->add_option("--config", o.config, "Run configuration (JSON)");
  cmd->add_option("--corpus", o.corpus, "Corpus file (JSON lines); overrides the config");
  cmd->add_flag("--mock", o.mock, "Use the built-in mock backends and, without a corpus, the procedural corpus");
  cmd->add_option("--round", o.round, "Rounds to run: 1, 2 or all")
      ->check(CLI::IsMember({"1", "2", "all"}));
  o.seed_opt = cmd->add_option("--seed", o.seed, "Run seed; overrides the config");
  o.out_opt = cmd->add_option("--out", o.out, "Output directory; overrides the config");
  cmd->add_flag("--resume", o.resume, "Continue interrupted manifests");
  o.stop_opt = cmd->add_option("--stop-after", o.stop_after,
                               "Stop after writing this many records");
  o.workers_opt = cmd->add_option("--workers", o.workers, "Worker threads; overrides the config")
                      ->check(CLI::PositiveNumber);
}

void AddValidate(CLI::App& app, ValidateOptions& o) {
  auto* cmd = app.add_subcommand("validate", "Check a manifest and the files it references");
  cmd->add_option("manifest", o.manifest, "Manifest file")->required();
  cmd->add_flag("--json", o.json, "Print the report as JSON");
}

void AddPlan(CLI::App& app, PlanOptions& o) {
  auto* cmd = app.add_subcommand("plan", "Partition a corpus into construction rounds");
  cmd->add_option("--corpus", o.corpus, "Corpus file (JSON lines)");
  cmd->add_flag("--mock", o.mock, "Plan the procedural corpus");
  cmd->add_option("--seed", o.seed, "Seed of the procedural corpus");
  cmd->add_option("--grid", o.grid, "Procedural image size WxH");
  cmd->add_option("--variants", o.variants, "Procedural variants per pair")->check(CLI::PositiveNumber);
}

void AddMakeCorpus(CLI::App& app, MakeCorpusOptions& o) {
  auto* cmd = app.add_subcommand("make-corpus", "Write the procedural corpus to disk");
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--seed", o.seed, "Corpus seed");
  cmd->add_option("--grid", o.grid, "Image size WxH");
  cmd->add_option("--variants", o.variants, "Variants per pair")->check(CLI::PositiveNumber);
}

void AddTriZone(CLI::App& app, TriZoneOptions& o) {
  auto* cmd = app.add_subcommand("trizone", "Build a ground-truth tri-zone mask");
  cmd->add_option("--round", o.round, "Construction round: 1 or 2")->check(CLI::IsMember({1, 2}));
  cmd->add_option("--parsing", o.parsing, "Parsing map of the ground-truth image (PNG + palette sidecar)")
      ->required();
  cmd->add_option("--class", o.garment_class, "Parsing class of the worn garment");
  cmd->add_option("--gen", o.gen, "Round 1: generation region mask");
  cmd->add_option("--fg", o.fg, "Foreground mask of the constructed image")->required();
  cmd->add_option("--pred", o.pred, "Round 2: predicted tri-zone mask");
  cmd->add_option("--grouping", o.grouping, "Round 2: intersect-union or intersect-imagi-only");
  cmd->add_option("--out", o.out, "Output tri-zone PNG")->required();
}

void AddAdjust(CLI::App& app, AdjustOptions& o) {
  auto* cmd = app.add_subcommand("adjust-mask", "Stretch or shrink a generation region");
  cmd->add_option("--mode", o.mode, "stretch or shrink")
      ->required()
      ->check(CLI::IsMember({"stretch", "shrink"}));
  cmd->add_option("--gen", o.gen, "Generation region mask")->required();
  cmd->add_option("--densepose", o.densepose, "Stretch: densepose map (PNG + palette sidecar)");
  cmd->add_option("--part", o.part, "Stretch: densepose part that sets the new lower boundary");
  cmd->add_option("--min", o.shrink_min, "Shrink: smallest cut as a fraction of the box height");
  cmd->add_option("--max", o.shrink_max, "Shrink: largest cut as a fraction of the box height");
  cmd->add_option("--seed", o.seed, "Shrink: seed of the cut draw");
  cmd->add_option("--out", o.out, "Adjusted mask PNG")->required();
  cmd->add_option("--residual", o.residual, "Shrink: removed pixels as a mask PNG");
}

void AddTrain(CLI::App& app, TrainOptions& o) {
  auto* cmd = app.add_subcommand("train-toy", "Train the toy two-stage model");
  cmd->add_option("--steps", o.steps, "Optimizer steps per stage");
  cmd->add_option("--seed", o.seed, "Seed for data, initialization and batches");
  cmd->add_option("--count", o.count, "Quadruplets to generate when no dataset is given");
  cmd->add_option("--grid", o.grid, "Generated image size WxH");
  cmd->add_option("--dataset", o.dataset, "Train on the ok records of this manifest instead");
  cmd->add_option("--out", o.out, "Directory for loss.csv, summary.json and parameters");
}

void AddEval(CLI::App& app, EvalOptionsCli& o) {
  auto* cmd = app.add_subcommand("eval-acc", "Judge try-on results and report accuracy");
  cmd->add_option("--cases", o.cases, "Cases file (JSON lines)")->required();
  cmd->add_option("--mock-judge", o.mock_judge, "Scripted replies, one '<id> <reply>' per line");
  cmd->add_option("--config", o.config, "Configuration with a 'judge' endpoint");
  cmd->add_option("--report", o.report, "Write the report as JSON here");
  cmd->add_option("--max-in-flight", o.max_in_flight, "Concurrent judge calls")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--panel-height", o.panel_height,
                  "Resize every panel to this height before splicing (0 = no resize)")
      ->check(CLI::NonNegativeNumber);
}

void AddSsim(CLI::App& app, SsimOptionsCli& o) {
  auto* cmd = app.add_subcommand("ssim", "Structural similarity of two images");
  cmd->add_option("a", o.a, "First image")->required();
  cmd->add_option("b", o.b, "Second image")->required();
  cmd->add_option("--window", o.window, "Gaussian window size")->check(CLI::PositiveNumber);
  cmd->add_option("--sigma", o.sigma, "Gaussian window sigma");
}

ImageGrid ParseGrid(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x != std::string::npos) {
      std::size_t used_w = 0, used_h = 0;
      const int w = std::stoi(text.substr(0, x), &used_w);
      const std::string rest = text.substr(x + 1);
      const int h = std::stoi(rest, &used_h);
      if (used_w == x && used_h == rest.size()) return MakeGrid(w, h);
    }
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::kInvalidArgument, "grid must look like 24x32, got '" + text + "'");
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    case ErrorCode::kStageGating:
      return kExitPrecondition;
    case ErrorCode::kTimeout:
    case ErrorCode::kProtocol:
    case ErrorCode::kRemoteFailure:
    case ErrorCode::kUnparseableReply:
    case ErrorCode::kDivergence:
    case ErrorCode::kRoutingMismatch:
      return kExitRunFailure;
    default:
      return kExitData;
  }
}

std::string RouteJson(const GarmentSpec& pc, const GarmentSpec& pg, const RoutingDecision& d) {
  nlohmann::ordered_json j;
  j["pc"] = FormatSpec(pc);
  j["pg"] = FormatSpec(pg);
  j["method"] = MethodName(d.method);
  j["round"] = RoundName(d.round);
  return j.dump();
}

int RunRoute(const RouteOptions& o, std::ostream& out, std::ostream& err) {
  if (o.table) {
    for (const GarmentSpec& pg : AllSpecs()) {
      for (const GarmentSpec& pc : AllSpecs()) {
        const RoutingDecision d = Route(pc, pg);
        if (o.json) {
          out << RouteJson(pc, pg, d) << "\n";
        } else {
          out << std::left << std::setw(12) << FormatSpec(pg) << " -> " << std::setw(12)
              << FormatSpec(pc) << "  " << std::setw(9) << MethodName(d.method) << "  "
              << RoundName(d.round) << "\n";
        }
      }
    }
    return kExitOk;
  }
  if (o.pc.empty() || o.pg.empty()) {
    err << "route: --pc and --pg are required unless --table is given\n";
    return kExitUsage;
  }
  const FineCategoryMap specs;
  const GarmentSpec pc = specs.Parse(o.pc);
  const GarmentSpec pg = specs.Parse(o.pg);
  const RoutingDecision d = Route(pc, pg);
  if (o.json) {
    out << RouteJson(pc, pg, d) << "\n";
  } else {
    out << MethodName(d.method) << " " << RoundName(d.round) << "\n";
  }
  return kExitOk;
}

void PrintRound(std::ostream& out, const char* name, const RoundSummary& s) {
  out << name << ": planned " << s.planned << ", resumed " << s.resumed << ", written "
      << s.written << " (ok " << s.ok << ", degenerate " << s.degenerate << ", failed "
      << s.failed << ")\n";
}

int RunConstruct(const ConstructOptions& o, std::ostream& out, std::ostream& err,
                 const std::atomic<bool>* cancel) {
  RunConfig config = o.config.empty() ? RunConfig{} : LoadConfig(o.config);
  if (!o.mock) ApplyEnvironmentOverrides(config);
  if (o.seed_opt->count() > 0) config.seed = o.seed;
  if (o.out_opt->count() > 0) config.output_dir = o.out;
  if (o.workers_opt->count() > 0) config.workers = o.workers;
  if (!o.corpus.empty()) config.corpus = o.corpus;
  ValidateConfig(config);

  std::vector<CorpusItem> corpus;
  if (config.corpus) {
    corpus = LoadCorpus(*config.corpus);
  } else if (o.mock) {
    corpus = MakeMockCorpus(config.mock_grid, config.mock_variants, config.seed);
  } else {
    err << "construct: give a corpus (--corpus or the config) or use --mock\n";
    return kExitUsage;
  }
  const BackendSet backends = o.mock ? mock::MakeBackendSet() : MakeRemoteBackendSet(config);

  RunOptions run;
  run.rounds = o.round == "1"   ? RoundSelection::kRound1
               : o.round == "2" ? RoundSelection::kRound2
                                : RoundSelection::kAll;
  run.mock = o.mock;
  run.resume = o.resume;
  if (o.stop_opt->count() > 0) run.stop_after = o.stop_after;
  run.cancel = cancel;

  const RunSummary summary = RunPipeline(corpus, backends, config, run);
  for (const auto& w : summary.warnings) err << "warning: " << w << "\n";
  if (run.rounds != RoundSelection::kRound2) PrintRound(out, "round1", summary.round1);
  if (run.rounds != RoundSelection::kRound1) PrintRound(out, "round2", summary.round2);
  out << "rejected (no method): " << summary.rejected << "\n";
  out << "failure ratio: " << summary.failure_ratio << "\n";
  if (summary.interrupted) {
    err << "interrupted; rerun with --resume to continue\n";
    return kExitInterrupted;
  }
  if (summary.aborted) {
    err << "failure ratio " << summary.failure_ratio << " exceeds the threshold "
        << config.failure_threshold << "\n";
    return kExitRunFailure;
  }

  nlohmann::ordered_json reports = nlohmann::ordered_json::object();
  bool clean = true;
  for (const auto& path : {summary.round1_manifest, summary.round2_manifest}) {
    if (path.empty()) continue;
    const ValidationReport report = ValidateManifest(path);
    out << path.filename().string() << ": " << FormatReport(report);
    reports[path.filename().string()] = ReportToJson(report);
    clean = clean && report.clean();
  }
  WriteTextFile(config.output_dir / "validation.json", reports.dump(2) + "\n");
  return clean ? kExitOk : kExitRunFailure;
}

int RunValidate(const ValidateOptions& o, std::ostream& out) {
  const ValidationReport report = ValidateManifest(o.manifest);
  if (o.json) {
    out << ReportToJson(report).dump(2) << "\n";
  } else {
    out << FormatReport(report);
  }
  return report.clean() ? kExitOk : kExitRunFailure;
}

int RunPlan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
  std::vector<CorpusItem> corpus;
  if (!o.corpus.empty()) {
    corpus = LoadCorpus(o.corpus);
  } else if (o.mock) {
    corpus = MakeMockCorpus(ParseGrid(o.grid), o.variants, o.seed);
  } else {
    err << "plan: give --corpus or --mock\n";
    return kExitUsage;
  }
  std::vector<SpecPair> pairs;
  for (const auto& item : corpus) pairs.push_back({item.pc, item.pg});
  const ConstructionPlan plan = EnumeratePlan(pairs);
  out << FormatPlan(plan);
  err << "round1 " << plan.round1.size() << ", round2 " << plan.round2.size() << ", rejected "
      << plan.rejected.size() << "\n";
  return kExitOk;
}

int RunMakeCorpus(const MakeCorpusOptions& o, std::ostream& out) {
  const auto items = MakeMockCorpus(ParseGrid(o.grid), o.variants, o.seed);
  const std::filesystem::path path = std::filesystem::path(o.out) / "corpus.jsonl";
  WriteCorpus(path, items);
  out << "wrote " << items.size() << " items to " << path.string() << "\n";
  return kExitOk;
}

int RunTriZone(const TriZoneOptions& o, std::ostream& out, std::ostream& err) {
  const LabelMap pm = ReadLabelMap(o.parsing);
  const BinaryMask fg = ReadBinaryMask(o.fg);
  const BinaryMask tryon = TryonZone(pm, o.garment_class);
  BinaryMask imagi;
  if (o.round == 1) {
    if (o.gen.empty()) {
      err << "trizone: round 1 needs --gen\n";
      return kExitUsage;
    }
    imagi = ImaginationZoneRound1(ReadBinaryMask(o.gen), fg, tryon);
  } else {
    if (o.pred.empty()) {
      err << "trizone: round 2 needs --pred\n";
      return kExitUsage;
    }
    const TriZoneMask pred = ReadTriZoneMask(o.pred);
    imagi = ImaginationZoneRound2(pred.zone_mask(Zone::kTryon), pred.zone_mask(Zone::kImagi), fg,
                                  tryon, ParseRound2Grouping(o.grouping));
  }
  const TriZoneMask m3 = BuildTriZoneGt(tryon, imagi);
  WriteTriZoneMask(o.out, m3);
  const ZoneCounts counts = m3.counts();
  out << "tryon " << counts.tryon << " recon " << counts.recon << " imagi " << counts.imagi
      << "\n";
  return kExitOk;
}

int RunAdjust(const AdjustOptions& o, std::ostream& out, std::ostream& err) {
  const BinaryMask gen = ReadBinaryMask(o.gen);
  ShiftPolicy policy;
  policy.densepose_target_part = o.part;
  policy.shrink_min = o.shrink_min;
  policy.shrink_max = o.shrink_max;
  policy.seed = o.seed;
  AdjustedMask result;
  if (o.mode == "stretch") {
    if (o.densepose.empty()) {
      err << "adjust-mask: stretch needs --densepose\n";
      return kExitUsage;
    }
    policy.mode = ShiftMode::kStretchDown;
    result = StretchDown(gen, ReadLabelMap(o.densepose), policy);
  } else {
    policy.mode = ShiftMode::kShrinkUp;
    result = ShrinkUp(gen, policy);
  }
  WriteBinaryMask(o.out, result.adjusted);
  if (!o.residual.empty()) WriteBinaryMask(o.residual, result.residual);
  out << "gen " << gen.count() << " adjusted " << result.adjusted.count() << " residual "
      << result.residual.count() << "\n";
  return kExitOk;
}

int RunTrain(const TrainOptions& o, std::ostream& out) {
  ToyTrainConfig config;
  config.steps = o.steps;
  config.seed = o.seed;
  const std::vector<ToyQuadruplet> dataset =
      o.dataset.empty() ? MakeToyDataset(o.count, ParseGrid(o.grid), o.seed)
                        : LoadToyDataset(o.dataset);
  const ToyTrainReport report = TrainToyTwoStage(dataset, config);
  const auto summary = ReportSummary(report, config);
  if (!o.out.empty()) {
    const std::filesystem::path dir = o.out;
    WriteTextFile(dir / "loss.csv", FormatLossCsv(report));
    WriteTextFile(dir / "summary.json", summary.dump(2) + "\n");
    WriteFileBytes(dir / "stage1.tzt", SerializeTensors(report.stage1_params));
    WriteFileBytes(dir / "stage2.tzt", SerializeTensors(report.stage2_params));
  }
  out << summary.dump(2) << "\n";
  return kExitOk;
}

int RunEval(const EvalOptionsCli& o, std::ostream& out, std::ostream& err) {
  const std::vector<EvalCase> cases = LoadEvalCases(o.cases);
  std::unique_ptr<JudgeBackend> judge;
  if (!o.mock_judge.empty()) {
    judge = std::make_unique<mock::ScriptedJudge>(ParseJudgeScript(ReadTextFile(o.mock_judge)));
  } else {
    RunConfig config = o.config.empty() ? RunConfig{} : LoadConfig(o.config);
    ApplyEnvironmentOverrides(config);
    const auto it = config.endpoints.find("judge");
    if (it == config.endpoints.end()) {
      err << "eval-acc: no judge endpoint configured; use --mock-judge or a config\n";
      return kExitUsage;
    }
    judge = std::make_unique<RemoteBackend>(it->second.endpoint);
  }
  EvalOptions options;
  options.max_in_flight = o.max_in_flight;
  if (o.panel_height > 0) options.panel_height = o.panel_height;
  const AccReport report = EvaluateAcc(cases, *judge, options);
  out << FormatAccReport(report);
  if (!o.report.empty()) WriteTextFile(o.report, AccReportToJson(report).dump(2) + "\n");
  return kExitOk;
}

int RunSsim(const SsimOptionsCli& o, std::ostream& out) {
  SsimOptions options;
  options.window = o.window;
  options.sigma = o.sigma;
  const double value = Ssim(ReadRgbImage(o.a), ReadRgbImage(o.b), options);
  out << std::setprecision(17) << value << "\n";
  return kExitOk;
}

}  // namespace

Parser::Parser() : options(std::make_unique<Options>()) {
  app = std::make_unique<CLI::App>("Tri-zone dataset construction and evaluation toolkit",
                                   "trizone");
  app->require_subcommand(1);
  Options& o = *options;
  AddRoute(*app, o.route);
  AddConstruct(*app, o.construct);
  AddValidate(*app, o.validate);
  AddPlan(*app, o.plan);
  AddMakeCorpus(*app, o.make_corpus);
  AddTriZone(*app, o.trizone);
  AddAdjust(*app, o.adjust);
  AddTrain(*app, o.train);
  AddEval(*app, o.eval);
  AddSsim(*app, o.ssim);
}

Parser::~Parser() = default;

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::atomic<bool>* cancel) {
  Parser parser;
  CLI::App& app = *parser.app;
  const Options& o = *parser.options;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help arrives as CallForHelp from the subcommand's parse.
    err << e.what() << "\n";
    err << "run 'trizone --help' for usage\n";
    return kExitUsage;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "route") return RunRoute(o.route, out, err);
    if (name == "construct") return RunConstruct(o.construct, out, err, cancel);
    if (name == "validate") return RunValidate(o.validate, out);
    if (name == "plan") return RunPlan(o.plan, out, err);
    if (name == "make-corpus") return RunMakeCorpus(o.make_corpus, out);
    if (name == "trizone") return RunTriZone(o.trizone, out, err);
    if (name == "adjust-mask") return RunAdjust(o.adjust, out, err);
    if (name == "train-toy") return RunTrain(o.train, out);
    if (name == "eval-acc") return RunEval(o.eval, out, err);
    if (name == "ssim") return RunSsim(o.ssim, out);
    err << "unknown subcommand " << name << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace trizone::cli
