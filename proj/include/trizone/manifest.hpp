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

#ifndef TRIZONE_MANIFEST_HPP_
#define TRIZONE_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "trizone/garment.hpp"
#include "trizone/maskcore.hpp"
#include "trizone/routing.hpp"

namespace trizone {

enum class ImageProvenance { kReal, kSynthetic };
enum class RecordStatus { kOk, kDegenerate, kBackendFailed };

std::string_view ProvenanceName(ImageProvenance p);  // "real" | "synthetic"
std::string_view StatusName(RecordStatus s);         // "ok" | "degenerate" | "backend_failed"

// One training quadruplet [P_c, P_g, G_g, M3g]. Image paths are relative to
// the manifest's directory and empty for failed records.
struct QuadrupletRecord {
  std::string id;
  RoutingDecision decision;
  GarmentSpec pc_spec;
  GarmentSpec pg_spec;
  std::string p_c;
  std::string p_g;
  std::string g_g;
  std::string m3g;
  ImageProvenance p_c_provenance = ImageProvenance::kSynthetic;
  ImageProvenance p_g_provenance = ImageProvenance::kReal;
  std::uint64_t seed = 0;
  RecordStatus status = RecordStatus::kOk;
  ZoneCounts zones;
  std::string failure;  // error kind and message when status is backend_failed
};

// Field order on the line is fixed; see docs/manifest.md.
std::string FormatRecordLine(const QuadrupletRecord& record);
QuadrupletRecord ParseRecordLine(const std::string& line);  // throws kFormat

struct ManifestHeader {
  Round round = Round::kRound1;
  std::string config_fingerprint;
};

std::string FormatHeaderLine(const ManifestHeader& header);
ManifestHeader ParseHeaderLine(const std::string& line);  // throws kFormat

// Append-only manifest file. Each record is flushed as one complete line.
// Refuses records that put a synthetic image in the ground-truth slot, or
// that repeat an id.
class ManifestWriter {
 public:
  // Creates (truncating) the file and writes the header.
  static ManifestWriter Create(const std::filesystem::path& path, const ManifestHeader& header);
  // Reopens an interrupted manifest: checks the header against `header`,
  // drops a trailing partial line, and returns the ids already written.
  static ManifestWriter Resume(const std::filesystem::path& path, const ManifestHeader& header,
                               std::set<std::string>* completed);

  void Write(const QuadrupletRecord& record);
  std::size_t written() const { return written_; }

 private:
  ManifestWriter(std::filesystem::path path, std::ofstream out)
      : path_(std::move(path)), out_(std::move(out)) {}

  std::filesystem::path path_;
  std::ofstream out_;
  std::set<std::string> ids_;
  std::size_t written_ = 0;
};

struct Manifest {
  ManifestHeader header;
  std::vector<QuadrupletRecord> records;
};

Manifest ReadManifest(const std::filesystem::path& path);

struct Violation {
  std::size_t line = 0;  // 1-based; the header is line 1
  std::string id;
  std::string kind;      // header, parse, duplicate-id, provenance, round, status, mask, image, grid, zones
  std::string message;
};

struct ValidationReport {
  std::size_t records = 0;
  std::vector<Violation> violations;
  bool clean() const { return violations.empty(); }
};

// Checks provenance flags, round/method consistency, id uniqueness, that
// every referenced file decodes, that all rasters share one grid, and that
// the stored zone counts match the mask. Reports at most one violation per
// record; never throws for content problems.
ValidationReport ValidateManifest(const std::filesystem::path& path);

std::string FormatReport(const ValidationReport& report);
nlohmann::json ReportToJson(const ValidationReport& report);

}  // namespace trizone

#endif  // TRIZONE_MANIFEST_HPP_
