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

#include "trizone/pipeline.hpp"

#include <algorithm>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <variant>

#include "trizone/error.hpp"
#include "trizone/image_io.hpp"
#include "trizone/maskadjust.hpp"
#include "trizone/mock_world.hpp"
#include "trizone/random.hpp"
#include "trizone/zonealgebra.hpp"

namespace trizone {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Corpus

std::vector<CorpusItem> MakeMockCorpus(const ImageGrid& grid, int variants, std::uint64_t seed) {
  std::vector<CorpusItem> items;
  for (const GarmentSpec& pg : AllSpecs()) {
    for (const GarmentSpec& pc : AllSpecs()) {
      for (int v = 0; v < variants; ++v) {
        std::string id = FormatSpec(pg) + "_" + FormatSpec(pc) + "_v" + std::to_string(v);
        std::replace(id.begin(), id.end(), '/', '-');
        Rng rng(DeriveSeed(seed, id));
        const mock::GarmentStyle worn = mock::RandomStyle(pg, rng.next());
        mock::Figure figure = mock::RenderFigure(grid, worn, rng.next());
        const mock::GarmentStyle target = mock::RandomStyle(pc, rng.next());
        items.push_back(CorpusItem{id, pc, pg, std::move(figure.image),
                                   mock::RenderGarment(grid, worn),
                                   mock::RenderGarment(grid, target)});
      }
    }
  }
  return items;
}

std::vector<CorpusItem> LoadCorpus(const std::filesystem::path& path) {
  const FineCategoryMap specs;
  std::istringstream in(ReadTextFile(path));
  const auto base = path.parent_path();
  std::vector<CorpusItem> items;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line, nullptr, false);
    auto bad = [&](const std::string& why) {
      return Error(ErrorCode::kFormat,
                   path.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    if (j.is_discarded() || !j.is_object()) throw bad("not a JSON object");
    for (const char* key : {"id", "pc", "pg", "p_g", "g_g", "g_c"}) {
      if (!j.contains(key) || !j[key].is_string()) {
        throw bad(std::string("missing string field '") + key + "'");
      }
    }
    CorpusItem item;
    item.id = j["id"].get<std::string>();
    if (item.id.empty() || item.id.find('/') != std::string::npos ||
        item.id.find("..") != std::string::npos) {
      throw bad("ids must be non-empty and may not contain '/' or '..'");
    }
    if (!ids.insert(item.id).second) throw bad("duplicate id '" + item.id + "'");
    item.pc = specs.Parse(j["pc"].get<std::string>());
    item.pg = specs.Parse(j["pg"].get<std::string>());
    item.p_g = ReadRgbImage(base / j["p_g"].get<std::string>());
    item.g_g = ReadRgbImage(base / j["g_g"].get<std::string>());
    item.g_c = ReadRgbImage(base / j["g_c"].get<std::string>());
    items.push_back(std::move(item));
  }
  return items;
}

void WriteCorpus(const std::filesystem::path& path, const std::vector<CorpusItem>& items) {
  const auto base = path.parent_path();
  std::string lines;
  for (const auto& item : items) {
    const std::string dir = "images/" + item.id + "/";
    WriteRgbImage(base / (dir + "p_g.png"), item.p_g);
    WriteRgbImage(base / (dir + "g_g.png"), item.g_g);
    WriteRgbImage(base / (dir + "g_c.png"), item.g_c);
    nlohmann::ordered_json j;
    j["id"] = item.id;
    j["pc"] = FormatSpec(item.pc);
    j["pg"] = FormatSpec(item.pg);
    j["p_g"] = dir + "p_g.png";
    j["g_g"] = dir + "g_g.png";
    j["g_c"] = dir + "g_c.png";
    lines += j.dump() + "\n";
  }
  WriteTextFile(path, lines);
}

// ---------------------------------------------------------------------------
// Record construction

std::vector<std::string> GenerationClasses(const RunConfig& config, Category pg, Category pc) {
  auto classes_for = [&](Category c) -> std::vector<std::string> {
    if (c == Category::kDress) {
      return {config.garment_classes.at(Category::kUpper),
              config.garment_classes.at(Category::kDress),
              config.garment_classes.at(Category::kLower)};
    }
    return {config.garment_classes.at(c)};
  };
  std::vector<std::string> out;
  for (Category c : {pg, pc}) {
    for (auto& name : classes_for(c)) {
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  }
  return out;
}

BinaryMask GenerationRegion(const LabelMap& pm_g, const std::vector<std::string>& classes) {
  BinaryMask region(pm_g.grid());
  for (const auto& name : classes) {
    if (pm_g.palette().find(name)) region = MaskUnion(region, ExtractClassMask(pm_g, name));
  }
  return region;
}

ShiftMode ShiftModeFor(const GarmentSpec& pc, const GarmentSpec& pg) {
  return pc.length == Length::kLong && pg.length == Length::kShort ? ShiftMode::kStretchDown
                                                                   : ShiftMode::kShrinkUp;
}

namespace {

std::string RecordDir(Round round, const std::string& id) {
  return std::string(RoundName(round)) + "/" + id + "/";
}

BuiltRecord StartRecord(const CorpusItem& item, std::uint64_t seed,
                        const RoutingDecision& decision) {
  BuiltRecord built;
  QuadrupletRecord& r = built.record;
  r.id = item.id;
  r.decision = decision;
  r.pc_spec = item.pc;
  r.pg_spec = item.pg;
  r.seed = seed;
  r.p_c_provenance = ImageProvenance::kSynthetic;
  r.p_g_provenance = ImageProvenance::kReal;
  built.p_g = item.p_g;
  built.g_g = item.g_g;
  return built;
}

// Runs one backend call with its own idempotency key and logs provenance.
template <typename Fn>
auto Call(BuiltRecord& built, const std::string& capability, Fn fn) {
  Provenance provenance;
  CallContext ctx{built.record.id + "/" + capability + "/" +
                      std::to_string(built.calls.size()),
                  &provenance};
  auto result = fn(ctx);
  built.calls.emplace_back(capability, provenance);
  return result;
}

void Finish(BuiltRecord& built, const BinaryMask& tryon, const BinaryMask& imagi,
            bool degenerate) {
  built.m3g = BuildTriZoneGt(tryon, imagi);
  QuadrupletRecord& r = built.record;
  r.zones = built.m3g.counts();
  r.status = degenerate ? RecordStatus::kDegenerate : RecordStatus::kOk;
  const std::string dir = RecordDir(r.decision.round, r.id);
  r.p_c = dir + "p_c.png";
  r.p_g = dir + "p_g.png";
  r.g_g = dir + "g_g.png";
  r.m3g = dir + "m3g.png";
}

void Fail(BuiltRecord& built, const Error& e) {
  QuadrupletRecord& r = built.record;
  r.status = RecordStatus::kBackendFailed;
  r.failure = e.what();
  r.zones = {};
  r.p_c.clear();
  r.p_g.clear();
  r.g_g.clear();
  r.m3g.clear();
}

void RequireBackend(const void* backend, const char* name) {
  if (backend == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, std::string("no ") + name + " backend configured");
  }
}

}  // namespace

BuiltRecord ConstructRound1Record(const CorpusItem& item, std::uint64_t seed,
                                  const RunConfig& config, const BackendSet& backends) {
  const RoutingDecision decision = Route(item.pc, item.pg);
  if (decision.round != Round::kRound1) {
    throw Error(ErrorCode::kRoutingMismatch,
                item.id + " routes to " + std::string(MethodName(decision.method)) +
                    ", not a round-1 method");
  }
  RequireBackend(backends.tryon.get(), "try-on");
  RequireBackend(backends.parsing.get(), "parsing");
  RequireBackend(backends.inpaint.get(), "inpaint");

  BuiltRecord built = StartRecord(item, seed, decision);
  try {
    const LabelMap pm_g = Call(built, "parse", [&](const CallContext& ctx) {
      return backends.parsing->ParseHuman(item.p_g, ctx);
    });
    const BinaryMask gen = GenerationRegion(
        pm_g, GenerationClasses(config, item.pg.category, item.pc.category));

    BinaryMask tryon_mask = gen;    // handed to the try-on backend
    BinaryMask regenerated = gen;   // everything that differs from P_g afterwards
    BinaryMask residual = BinaryMask::Empty(gen.grid());
    if (decision.method == Method::kIdmS && gen.any()) {
      ShiftPolicy policy;
      policy.mode = ShiftModeFor(item.pc, item.pg);
      policy.densepose_target_part = config.stretch_target_part;
      policy.shrink_min = config.shrink_min;
      policy.shrink_max = config.shrink_max;
      policy.seed = seed;
      if (policy.mode == ShiftMode::kStretchDown) {
        const LabelMap densepose = Call(built, "densepose", [&](const CallContext& ctx) {
          return backends.parsing->Densepose(item.p_g, ctx);
        });
        AdjustedMask adjusted = StretchDown(gen, densepose, policy);
        tryon_mask = adjusted.adjusted;
        regenerated = adjusted.adjusted;
      } else {
        AdjustedMask adjusted = ShrinkUp(gen, policy);
        tryon_mask = std::move(adjusted.adjusted);
        residual = std::move(adjusted.residual);
      }
    }

    TryOnRequest request{item.p_g, item.g_c, tryon_mask};
    RgbImage p_c = Call(built, "tryon", [&](const CallContext& ctx) {
      return backends.tryon->TryOn(request, ctx);
    });
    const InpaintRequest inpaint = MakeInpaintRequest(p_c, residual);
    if (!inpaint.noop) {
      p_c = Call(built, "inpaint", [&](const CallContext& ctx) {
        return backends.inpaint->Inpaint(inpaint.image, inpaint.region, ctx);
      });
    }
    const LabelMap pm_c = Call(built, "parse", [&](const CallContext& ctx) {
      return backends.parsing->ParseHuman(p_c, ctx);
    });

    const BinaryMask tryon = TryonZone(pm_g, config.garment_classes.at(item.pg.category));
    const BinaryMask imagi = ImaginationZoneRound1(regenerated, ForegroundMask(pm_c), tryon);
    built.p_c = std::move(p_c);
    Finish(built, tryon, imagi, tryon.none());
  } catch (const Error& e) {
    Fail(built, e);
  }
  return built;
}

BuiltRecord ConstructRound2Record(const CorpusItem& item, std::uint64_t seed,
                                  const RunConfig& config, const BackendSet& backends) {
  const RoutingDecision decision = Route(item.pc, item.pg);
  if (decision.method != Method::kCrossVton) {
    throw Error(ErrorCode::kRoutingMismatch,
                item.id + " routes to " + std::string(MethodName(decision.method)) +
                    ", not CROSSVTON");
  }
  if (!backends.round1_trained || !backends.trizone || !backends.tryon_round2) {
    throw Error(ErrorCode::kStageGating,
                "round-2 construction needs round-1 trained tri-zone and try-on backends");
  }
  RequireBackend(backends.parsing.get(), "parsing");

  BuiltRecord built = StartRecord(item, seed, decision);
  try {
    const TriZoneMask m3p = Call(built, "trizone", [&](const CallContext& ctx) {
      return backends.trizone->Predict(item.p_g, item.g_c, ctx);
    });
    TryOnRequest request{item.p_g, item.g_c, m3p};
    RgbImage p_c = Call(built, "tryon", [&](const CallContext& ctx) {
      return backends.tryon_round2->TryOn(request, ctx);
    });
    const LabelMap pm_g = Call(built, "parse", [&](const CallContext& ctx) {
      return backends.parsing->ParseHuman(item.p_g, ctx);
    });
    const LabelMap pm_c = Call(built, "parse", [&](const CallContext& ctx) {
      return backends.parsing->ParseHuman(p_c, ctx);
    });

    const BinaryMask tryon_p = m3p.zone_mask(Zone::kTryon);
    const BinaryMask imagi_p = m3p.zone_mask(Zone::kImagi);
    const BinaryMask tryon = TryonZone(pm_g, config.garment_classes.at(item.pg.category));
    const BinaryMask imagi = ImaginationZoneRound2(tryon_p, imagi_p, ForegroundMask(pm_c),
                                                   tryon, config.round2_grouping);
    built.p_c = std::move(p_c);
    Finish(built, tryon, imagi, tryon.none() || (tryon_p.none() && imagi_p.none()));
  } catch (const Error& e) {
    Fail(built, e);
  }
  return built;
}

// ---------------------------------------------------------------------------
// Run

std::filesystem::path ManifestPath(const std::filesystem::path& output_dir, Round round) {
  return output_dir / (std::string(RoundName(round)) + ".jsonl");
}

namespace {

void PersistFiles(const std::filesystem::path& output_dir, const BuiltRecord& built) {
  const QuadrupletRecord& r = built.record;
  if (r.status == RecordStatus::kBackendFailed) return;
  WriteRgbImage(output_dir / r.p_c, built.p_c);
  WriteRgbImage(output_dir / r.p_g, built.p_g);
  WriteRgbImage(output_dir / r.g_g, built.g_g);
  WriteTriZoneMask(output_dir / r.m3g, built.m3g);
}

std::string LogLine(const BuiltRecord& built, const std::string& capability,
                    const Provenance& p) {
  nlohmann::ordered_json j;
  j["id"] = built.record.id;
  j["capability"] = capability;
  j["source"] = p.source;
  j["endpoint"] = p.endpoint;
  j["latency_ms"] = p.latency_ms;
  j["attempts"] = p.attempts;
  return j.dump();
}

struct RoundContext {
  Round round;
  std::vector<const CorpusItem*> jobs;
  std::set<std::string> completed;
};

using Slot = std::variant<std::monostate, BuiltRecord, std::exception_ptr>;

// Returns false when the run should stop (interrupted).
bool ProcessRound(RoundContext& rc, const BackendSet& backends, const RunConfig& config,
                  const RunOptions& options, ManifestWriter& writer, std::ofstream& log,
                  RoundSummary& summary, std::size_t& written_total) {
  std::vector<const CorpusItem*> todo;
  for (const CorpusItem* item : rc.jobs) {
    if (rc.completed.count(item->id) == 0) todo.push_back(item);
  }
  summary.planned = rc.jobs.size();
  summary.resumed = rc.jobs.size() - todo.size();

  const std::size_t n = todo.size();
  const std::size_t window = static_cast<std::size_t>(config.workers + config.max_in_flight);
  std::vector<Slot> slots(n);
  std::mutex mu;
  std::condition_variable cv;
  std::size_t next = 0;
  std::size_t write_pos = 0;
  bool stop = false;

  auto cancelled = [&] { return options.cancel != nullptr && options.cancel->load(); };

  auto worker = [&] {
    for (;;) {
      std::size_t i = 0;
      {
        std::unique_lock lock(mu);
        cv.wait(lock, [&] { return stop || next >= n || next < write_pos + window; });
        if (stop || next >= n || cancelled()) return;
        i = next++;
      }
      Slot result;
      try {
        const std::uint64_t seed = DeriveSeed(config.seed, todo[i]->id);
        BuiltRecord built = rc.round == Round::kRound1
                                ? ConstructRound1Record(*todo[i], seed, config, backends)
                                : ConstructRound2Record(*todo[i], seed, config, backends);
        PersistFiles(config.output_dir, built);
        result = std::move(built);
      } catch (...) {
        result = std::current_exception();
      }
      {
        std::lock_guard lock(mu);
        slots[i] = std::move(result);
      }
      cv.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  const int threads = std::max(1, std::min<int>(config.workers, static_cast<int>(n)));
  for (int t = 0; t < threads && n > 0; ++t) pool.emplace_back(worker);

  bool interrupted = false;
  std::exception_ptr failure;
  for (std::size_t i = 0; i < n; ++i) {
    Slot slot;
    {
      std::unique_lock lock(mu);
      // After a cancel only records that are already finished (or being
      // finished by a worker) are written.
      cv.wait(lock, [&] {
        return !std::holds_alternative<std::monostate>(slots[i]) ||
               (cancelled() && next <= i);
      });
      if (std::holds_alternative<std::monostate>(slots[i])) {
        interrupted = true;
        break;
      }
      slot = std::move(slots[i]);
    }
    if (auto* e = std::get_if<std::exception_ptr>(&slot)) {
      failure = *e;
      break;
    }
    BuiltRecord& built = std::get<BuiltRecord>(slot);
    writer.Write(built.record);
    for (const auto& [capability, provenance] : built.calls) {
      log << LogLine(built, capability, provenance) << '\n';
    }
    log.flush();
    ++summary.written;
    ++written_total;
    switch (built.record.status) {
      case RecordStatus::kOk: ++summary.ok; break;
      case RecordStatus::kDegenerate: ++summary.degenerate; break;
      case RecordStatus::kBackendFailed: ++summary.failed; break;
    }
    if (options.on_record) options.on_record(built.record);
    {
      std::lock_guard lock(mu);
      write_pos = i + 1;
      if (options.stop_after && written_total >= *options.stop_after && i + 1 < n) {
        stop = true;
        interrupted = true;
      }
    }
    cv.notify_all();
    if (interrupted) break;
  }
  {
    std::lock_guard lock(mu);
    stop = true;
  }
  cv.notify_all();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return !interrupted;
}

double FailureRatio(const std::filesystem::path& manifest) {
  const Manifest m = ReadManifest(manifest);
  if (m.records.empty()) return 0.0;
  std::size_t failed = 0;
  for (const auto& r : m.records) failed += r.status == RecordStatus::kBackendFailed ? 1 : 0;
  return static_cast<double>(failed) / static_cast<double>(m.records.size());
}

}  // namespace

RunSummary RunPipeline(const std::vector<CorpusItem>& corpus, const BackendSet& backends,
                       const RunConfig& config, const RunOptions& options) {
  ValidateConfig(config);
  std::vector<SpecPair> pairs;
  pairs.reserve(corpus.size());
  for (const auto& item : corpus) pairs.push_back({item.pc, item.pg});
  const ConstructionPlan plan = EnumeratePlan(pairs);

  RunSummary summary;
  for (const auto& entry : plan.rejected) {
    summary.warnings.push_back("skipping " + corpus[entry.index].id + ": no construction method for pc=" +
                               FormatSpec(entry.pair.pc) + ", pg=" + FormatSpec(entry.pair.pg));
  }
  summary.rejected = plan.rejected.size();

  const bool want1 = options.rounds != RoundSelection::kRound2;
  const bool want2 = options.rounds != RoundSelection::kRound1;
  if (want2 && (!backends.round1_trained || !backends.trizone || !backends.tryon_round2)) {
    throw Error(ErrorCode::kStageGating,
                "round 2 requires tri-zone and try-on backends declared round-1 trained");
  }

  std::filesystem::create_directories(config.output_dir);
  const std::string fingerprint = ConfigFingerprint(config, options.mock);
  std::ofstream log(config.output_dir / "pipeline.log.jsonl",
                    options.resume ? std::ios::app : std::ios::trunc);
  if (!log) throw Error(ErrorCode::kIo, "cannot open the pipeline log");

  std::size_t written_total = 0;
  const BackendSet limited = LimitInFlight(backends, config.max_in_flight);

  for (Round round : {Round::kRound1, Round::kRound2}) {
    if ((round == Round::kRound1 && !want1) || (round == Round::kRound2 && !want2)) continue;
    RoundContext rc{round, {}, {}};
    for (const auto& entry : round == Round::kRound1 ? plan.round1 : plan.round2) {
      rc.jobs.push_back(&corpus[entry.index]);
    }
    const auto path = ManifestPath(config.output_dir, round);
    (round == Round::kRound1 ? summary.round1_manifest : summary.round2_manifest) = path;
    const ManifestHeader header{round, fingerprint};
    ManifestWriter writer = options.resume ? ManifestWriter::Resume(path, header, &rc.completed)
                                           : ManifestWriter::Create(path, header);
    RoundSummary& rs = round == Round::kRound1 ? summary.round1 : summary.round2;
    const bool finished =
        ProcessRound(rc, limited, config, options, writer, log, rs, written_total);
    summary.failure_ratio = std::max(summary.failure_ratio, FailureRatio(path));
    if (!finished) {
      summary.interrupted = true;
      return summary;
    }
    if (summary.failure_ratio > config.failure_threshold) {
      summary.aborted = true;
      return summary;
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------
// Backend wiring

BackendSet MakeRemoteBackendSet(const RunConfig& config) {
  std::map<std::string, std::shared_ptr<RemoteBackend>> clients;
  auto get = [&](const std::string& name) -> std::shared_ptr<RemoteBackend> {
    const auto it = config.endpoints.find(name);
    if (it == config.endpoints.end()) return nullptr;
    auto& client = clients[name];
    if (!client) client = std::make_shared<RemoteBackend>(it->second.endpoint);
    return client;
  };
  auto trained = [&](const std::string& name) {
    const auto it = config.endpoints.find(name);
    return it != config.endpoints.end() && it->second.round1_trained;
  };

  BackendSet set;
  set.tryon = get("tryon");
  set.inpaint = get("inpaint");
  set.parsing = get("parse");
  set.trizone = get("trizone");
  set.tryon_round2 = get("tryon_round2");
  set.round1_trained = set.trizone && set.tryon_round2 && trained("trizone") &&
                       trained("tryon_round2");

  // Densepose may be served separately from parsing.
  if (auto densepose = get("densepose"); densepose && set.parsing) {
    struct SplitParsing final : ParsingBackend {
      std::shared_ptr<ParsingBackend> parse;
      std::shared_ptr<ParsingBackend> densepose;
      LabelMap ParseHuman(const RgbImage& image, const CallContext& ctx) override {
        return parse->ParseHuman(image, ctx);
      }
      LabelMap Densepose(const RgbImage& image, const CallContext& ctx) override {
        return densepose->Densepose(image, ctx);
      }
    };
    auto split = std::make_shared<SplitParsing>();
    split->parse = set.parsing;
    split->densepose = densepose;
    set.parsing = split;
  }
  return set;
}

namespace {

class Gate {
 public:
  explicit Gate(int limit) : available_(limit) {}
  void Acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return available_ > 0; });
    --available_;
  }
  void Release() {
    {
      std::lock_guard lock(mu_);
      ++available_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int available_;
};

class GateHold {
 public:
  explicit GateHold(Gate& gate) : gate_(gate) { gate_.Acquire(); }
  ~GateHold() { gate_.Release(); }
  GateHold(const GateHold&) = delete;
  GateHold& operator=(const GateHold&) = delete;

 private:
  Gate& gate_;
};

struct GatedTryOn final : TryOnBackend {
  std::shared_ptr<TryOnBackend> inner;
  std::shared_ptr<Gate> gate;
  RgbImage TryOn(const TryOnRequest& request, const CallContext& ctx) override {
    GateHold hold(*gate);
    return inner->TryOn(request, ctx);
  }
};

struct GatedInpaint final : InpaintBackend {
  std::shared_ptr<InpaintBackend> inner;
  std::shared_ptr<Gate> gate;
  RgbImage Inpaint(const RgbImage& image, const BinaryMask& region,
                   const CallContext& ctx) override {
    GateHold hold(*gate);
    return inner->Inpaint(image, region, ctx);
  }
};

struct GatedParsing final : ParsingBackend {
  std::shared_ptr<ParsingBackend> inner;
  std::shared_ptr<Gate> gate;
  LabelMap ParseHuman(const RgbImage& image, const CallContext& ctx) override {
    GateHold hold(*gate);
    return inner->ParseHuman(image, ctx);
  }
  LabelMap Densepose(const RgbImage& image, const CallContext& ctx) override {
    GateHold hold(*gate);
    return inner->Densepose(image, ctx);
  }
};

struct GatedTriZone final : TriZoneBackend {
  std::shared_ptr<TriZoneBackend> inner;
  std::shared_ptr<Gate> gate;
  TriZoneMask Predict(const RgbImage& model_image, const RgbImage& garment_image,
                      const CallContext& ctx) override {
    GateHold hold(*gate);
    return inner->Predict(model_image, garment_image, ctx);
  }
};

}  // namespace

BackendSet LimitInFlight(const BackendSet& backends, int limit) {
  std::map<const void*, std::shared_ptr<Gate>> gates;
  auto gate_for = [&](const void* object) {
    auto& gate = gates[object];
    if (!gate) gate = std::make_shared<Gate>(std::max(1, limit));
    return gate;
  };
  BackendSet out = backends;
  if (backends.tryon) {
    auto g = std::make_shared<GatedTryOn>();
    g->inner = backends.tryon;
    g->gate = gate_for(dynamic_cast<const void*>(backends.tryon.get()));
    out.tryon = g;
  }
  if (backends.tryon_round2) {
    auto g = std::make_shared<GatedTryOn>();
    g->inner = backends.tryon_round2;
    g->gate = gate_for(dynamic_cast<const void*>(backends.tryon_round2.get()));
    out.tryon_round2 = g;
  }
  if (backends.inpaint) {
    auto g = std::make_shared<GatedInpaint>();
    g->inner = backends.inpaint;
    g->gate = gate_for(dynamic_cast<const void*>(backends.inpaint.get()));
    out.inpaint = g;
  }
  if (backends.parsing) {
    auto g = std::make_shared<GatedParsing>();
    g->inner = backends.parsing;
    g->gate = gate_for(dynamic_cast<const void*>(backends.parsing.get()));
    out.parsing = g;
  }
  if (backends.trizone) {
    auto g = std::make_shared<GatedTriZone>();
    g->inner = backends.trizone;
    g->gate = gate_for(dynamic_cast<const void*>(backends.trizone.get()));
    out.trizone = g;
  }
  return out;
}

}  // namespace trizone
