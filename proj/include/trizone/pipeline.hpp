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

#ifndef TRIZONE_PIPELINE_HPP_
#define TRIZONE_PIPELINE_HPP_

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trizone/backends.hpp"
#include "trizone/config.hpp"
#include "trizone/manifest.hpp"
#include "trizone/routing.hpp"

namespace trizone {

// One construction job: a real model image P_g wearing G_g, and the garment
// G_c to dress it in.
struct CorpusItem {
  std::string id;
  GarmentSpec pc;
  GarmentSpec pg;
  RgbImage p_g;
  RgbImage g_g;
  RgbImage g_c;
};

// The procedural corpus: every (pg, pc) spec pair, `variants` times, on
// `grid`. Ids look like "upper-short_dress-long_v0".
std::vector<CorpusItem> MakeMockCorpus(const ImageGrid& grid, int variants, std::uint64_t seed);

// Corpus files are JSON lines {"id","pc","pg","p_g","g_g","g_c"} with image
// paths relative to the corpus file.
std::vector<CorpusItem> LoadCorpus(const std::filesystem::path& path);
void WriteCorpus(const std::filesystem::path& path, const std::vector<CorpusItem>& items);

// Parsing classes regenerated when dressing a `pg` model in a `pc` garment.
std::vector<std::string> GenerationClasses(const RunConfig& config, Category pg, Category pc);

// Generation region M2 obtained from the parsing map: the union of the
// generation classes that the palette declares.
BinaryMask GenerationRegion(const LabelMap& pm_g, const std::vector<std::string>& classes);

// IDM_S direction: stretch when the constructed garment is long and the
// ground-truth one short, shrink otherwise.
ShiftMode ShiftModeFor(const GarmentSpec& pc, const GarmentSpec& pg);

// Everything a record's construction produced, before it is written.
struct BuiltRecord {
  QuadrupletRecord record;
  RgbImage p_c;
  RgbImage p_g;
  RgbImage g_g;
  TriZoneMask m3g;
  // Calls made, in order: capability name and provenance.
  std::vector<std::pair<std::string, Provenance>> calls;
};

// Round-1 construction (IDM / IDM_S). Throws kRoutingMismatch for any other
// route. Backend failures come back as status backend_failed.
BuiltRecord ConstructRound1Record(const CorpusItem& item, std::uint64_t seed,
                                  const RunConfig& config, const BackendSet& backends);

// Round-2 construction (CROSSVTON). Throws kRoutingMismatch for any other
// route and kStageGating unless the backends are round-1 trained.
BuiltRecord ConstructRound2Record(const CorpusItem& item, std::uint64_t seed,
                                  const RunConfig& config, const BackendSet& backends);

enum class RoundSelection { kRound1, kRound2, kAll };

struct RunOptions {
  RoundSelection rounds = RoundSelection::kAll;
  bool mock = false;
  bool resume = false;
  // Stop after this many records have been written by this invocation.
  std::optional<std::size_t> stop_after;
  // Set asynchronously (e.g. by a signal handler) to finish in-flight
  // records and stop.
  const std::atomic<bool>* cancel = nullptr;
  // Called from the writer thread after each record is persisted.
  std::function<void(const QuadrupletRecord&)> on_record;
};

struct RoundSummary {
  std::size_t planned = 0;
  std::size_t resumed = 0;  // already present in the manifest
  std::size_t written = 0;
  std::size_t ok = 0;
  std::size_t degenerate = 0;
  std::size_t failed = 0;
};

struct RunSummary {
  RoundSummary round1;
  RoundSummary round2;
  std::size_t rejected = 0;  // NA pairs, one warning each
  std::vector<std::string> warnings;
  bool interrupted = false;
  bool aborted = false;  // failure ratio above threshold
  double failure_ratio = 0.0;
  std::filesystem::path round1_manifest;
  std::filesystem::path round2_manifest;
};

std::filesystem::path ManifestPath(const std::filesystem::path& output_dir, Round round);

// Plans the corpus, runs every round-1 job before any round-2 job on a
// bounded worker pool, and appends records to <output>/round{1,2}.jsonl in
// plan order. Per-record seeds are DeriveSeed(config.seed, id), so the
// output is independent of scheduling. Throws kStageGating before doing any
// work when round-2 jobs are selected but the backends are not round-1
// trained.
RunSummary RunPipeline(const std::vector<CorpusItem>& corpus, const BackendSet& backends,
                       const RunConfig& config, const RunOptions& options);

// Remote backends built from config.endpoints. Round-2 capabilities count
// as trained only when their endpoints say so.
BackendSet MakeRemoteBackendSet(const RunConfig& config);

// Wraps each backend so that at most `limit` calls are in flight per
// backend object at any time.
BackendSet LimitInFlight(const BackendSet& backends, int limit);

}  // namespace trizone

#endif  // TRIZONE_PIPELINE_HPP_
