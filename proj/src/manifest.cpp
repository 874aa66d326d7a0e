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

#include "trizone/manifest.hpp"

#include <map>
#include <sstream>

#include "trizone/error.hpp"
#include "trizone/image_io.hpp"

namespace trizone {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kFormatTag = "trizone-manifest";
constexpr int kFormatVersion = 1;

[[noreturn]] void BadLine(const std::string& message) {
  throw Error(ErrorCode::kFormat, "manifest: " + message);
}

const FineCategoryMap& SpecParser() {
  static const FineCategoryMap kMap;
  return kMap;
}

Round ParseRound(const std::string& name) {
  if (name == "round1") return Round::kRound1;
  if (name == "round2") return Round::kRound2;
  if (name == "none") return Round::kNone;
  BadLine("unknown round '" + name + "'");
}

ImageProvenance ParseProvenance(const std::string& name) {
  if (name == "real") return ImageProvenance::kReal;
  if (name == "synthetic") return ImageProvenance::kSynthetic;
  BadLine("unknown provenance '" + name + "'");
}

RecordStatus ParseStatus(const std::string& name) {
  if (name == "ok") return RecordStatus::kOk;
  if (name == "degenerate") return RecordStatus::kDegenerate;
  if (name == "backend_failed") return RecordStatus::kBackendFailed;
  BadLine("unknown status '" + name + "'");
}

template <typename T>
T Field(const json& j, const char* key) {
  if (!j.contains(key)) BadLine(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    BadLine(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

std::string_view ProvenanceName(ImageProvenance p) {
  return p == ImageProvenance::kReal ? "real" : "synthetic";
}

std::string_view StatusName(RecordStatus s) {
  switch (s) {
    case RecordStatus::kOk: return "ok";
    case RecordStatus::kDegenerate: return "degenerate";
    case RecordStatus::kBackendFailed: return "backend_failed";
  }
  return "?";
}

std::string FormatRecordLine(const QuadrupletRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["method"] = MethodName(r.decision.method);
  j["round"] = RoundName(r.decision.round);
  j["pc_spec"] = FormatSpec(r.pc_spec);
  j["pg_spec"] = FormatSpec(r.pg_spec);
  j["p_c"] = r.p_c;
  j["p_g"] = r.p_g;
  j["g_g"] = r.g_g;
  j["m3g"] = r.m3g;
  j["p_c_provenance"] = ProvenanceName(r.p_c_provenance);
  j["p_g_provenance"] = ProvenanceName(r.p_g_provenance);
  j["seed"] = r.seed;
  j["status"] = StatusName(r.status);
  j["zones"] = ordered_json{{"tryon", r.zones.tryon}, {"recon", r.zones.recon},
                            {"imagi", r.zones.imagi}};
  j["failure"] = r.failure.empty() ? ordered_json(nullptr) : ordered_json(r.failure);
  return j.dump();
}

QuadrupletRecord ParseRecordLine(const std::string& line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) BadLine("record is not a JSON object");
  QuadrupletRecord r;
  r.id = Field<std::string>(j, "id");
  r.decision.method = ParseMethod(Field<std::string>(j, "method"));
  r.decision.round = ParseRound(Field<std::string>(j, "round"));
  try {
    r.pc_spec = SpecParser().Parse(Field<std::string>(j, "pc_spec"));
    r.pg_spec = SpecParser().Parse(Field<std::string>(j, "pg_spec"));
  } catch (const Error& e) {
    BadLine(e.what());
  }
  r.p_c = Field<std::string>(j, "p_c");
  r.p_g = Field<std::string>(j, "p_g");
  r.g_g = Field<std::string>(j, "g_g");
  r.m3g = Field<std::string>(j, "m3g");
  r.p_c_provenance = ParseProvenance(Field<std::string>(j, "p_c_provenance"));
  r.p_g_provenance = ParseProvenance(Field<std::string>(j, "p_g_provenance"));
  r.seed = Field<std::uint64_t>(j, "seed");
  r.status = ParseStatus(Field<std::string>(j, "status"));
  const json zones = Field<json>(j, "zones");
  r.zones.tryon = Field<std::size_t>(zones, "tryon");
  r.zones.recon = Field<std::size_t>(zones, "recon");
  r.zones.imagi = Field<std::size_t>(zones, "imagi");
  if (j.contains("failure") && !j["failure"].is_null()) {
    r.failure = Field<std::string>(j, "failure");
  }
  return r;
}

std::string FormatHeaderLine(const ManifestHeader& header) {
  ordered_json j;
  j["format"] = kFormatTag;
  j["version"] = kFormatVersion;
  j["round"] = RoundName(header.round);
  j["config_fingerprint"] = header.config_fingerprint;
  return j.dump();
}

ManifestHeader ParseHeaderLine(const std::string& line) {
  const json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) BadLine("header is not a JSON object");
  if (Field<std::string>(j, "format") != kFormatTag) BadLine("not a trizone manifest");
  if (Field<int>(j, "version") != kFormatVersion) BadLine("unsupported manifest version");
  ManifestHeader h;
  h.round = ParseRound(Field<std::string>(j, "round"));
  h.config_fingerprint = Field<std::string>(j, "config_fingerprint");
  return h;
}

ManifestWriter ManifestWriter::Create(const std::filesystem::path& path,
                                      const ManifestHeader& header) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out << FormatHeaderLine(header) << '\n';
  out.flush();
  return ManifestWriter(path, std::move(out));
}

ManifestWriter ManifestWriter::Resume(const std::filesystem::path& path,
                                      const ManifestHeader& header,
                                      std::set<std::string>* completed) {
  if (!std::filesystem::exists(path)) return Create(path, header);
  std::string text = ReadTextFile(path);
  // A crash can leave a partial last line; everything after the final
  // newline is discarded.
  const auto last_newline = text.rfind('\n');
  text.resize(last_newline == std::string::npos ? 0 : last_newline + 1);
  if (text.empty()) return Create(path, header);

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  const ManifestHeader existing = ParseHeaderLine(line);
  if (existing.round != header.round ||
      existing.config_fingerprint != header.config_fingerprint) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot resume " + path.string() + ": written with a different configuration");
  }
  std::set<std::string> ids;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    ids.insert(ParseRecordLine(line).id);
    ++count;
  }
  std::filesystem::resize_file(path, text.size());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + path.string());
  ManifestWriter writer(path, std::move(out));
  writer.ids_ = ids;
  writer.written_ = count;
  if (completed != nullptr) *completed = std::move(ids);
  return writer;
}

void ManifestWriter::Write(const QuadrupletRecord& record) {
  if (record.p_g_provenance != ImageProvenance::kReal ||
      record.p_c_provenance != ImageProvenance::kSynthetic) {
    throw Error(ErrorCode::kInvalidArgument,
                "record '" + record.id + "' places a synthetic image in the ground-truth slot");
  }
  if (!ids_.insert(record.id).second) {
    throw Error(ErrorCode::kInvalidArgument, "duplicate record id '" + record.id + "'");
  }
  out_ << FormatRecordLine(record) << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIo, "write to " + path_.string() + " failed");
  ++written_;
}

Manifest ReadManifest(const std::filesystem::path& path) {
  std::istringstream in(ReadTextFile(path));
  std::string line;
  if (!std::getline(in, line)) BadLine(path.string() + " is empty");
  Manifest m;
  m.header = ParseHeaderLine(line);
  while (std::getline(in, line)) {
    if (!line.empty()) m.records.push_back(ParseRecordLine(line));
  }
  return m;
}

namespace {

// Returns the violation for one record, if any. Checks are ordered so the
// first failing one is reported.
std::optional<Violation> CheckRecord(const QuadrupletRecord& r, Round manifest_round,
                                     const std::filesystem::path& base) {
  auto v = [&](std::string kind, std::string message) {
    return Violation{0, r.id, std::move(kind), std::move(message)};
  };
  if (r.p_g_provenance != ImageProvenance::kReal ||
      r.p_c_provenance != ImageProvenance::kSynthetic) {
    return v("provenance", "ground-truth slot must hold the real image and p_c the synthetic one");
  }
  if (Route(r.pc_spec, r.pg_spec) != r.decision) {
    return v("round", "method does not match the routing table for " +
                          FormatSpec(r.pc_spec) + " <- " + FormatSpec(r.pg_spec));
  }
  if (r.decision.round != manifest_round) {
    return v("round", "record belongs to " + std::string(RoundName(r.decision.round)) +
                          " but the manifest is " + std::string(RoundName(manifest_round)));
  }
  if (r.status == RecordStatus::kBackendFailed) {
    if (r.failure.empty()) return v("status", "failed record without a failure message");
    return std::nullopt;
  }

  TriZoneMask m3g;
  try {
    m3g = ReadTriZoneMask(base / r.m3g);
  } catch (const Error& e) {
    return v("mask", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return v("mask", e.what());
  }
  for (const auto& [slot, rel] : {std::pair{"p_c", &r.p_c}, std::pair{"p_g", &r.p_g},
                                  std::pair{"g_g", &r.g_g}}) {
    RgbImage image;
    try {
      image = ReadRgbImage(base / *rel);
    } catch (const Error& e) {
      return v("image", std::string(slot) + ": " + e.what());
    }
    if (image.grid() != m3g.grid()) {
      return v("grid", std::string(slot) + " does not share the mask grid");
    }
  }
  const ZoneCounts counts = m3g.counts();
  if (counts != r.zones || counts.tryon + counts.recon + counts.imagi != m3g.grid().area()) {
    return v("zones", "zone counts in the record do not match the mask");
  }
  return std::nullopt;
}

}  // namespace

ValidationReport ValidateManifest(const std::filesystem::path& path) {
  ValidationReport report;
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const Error& e) {
    report.violations.push_back({0, "", "header", e.what()});
    return report;
  }
  std::istringstream in(text);
  std::string line;
  ManifestHeader header;
  if (!std::getline(in, line)) {
    report.violations.push_back({1, "", "header", "manifest is empty"});
    return report;
  }
  try {
    header = ParseHeaderLine(line);
  } catch (const Error& e) {
    report.violations.push_back({1, "", "header", e.what()});
    return report;
  }

  const std::filesystem::path base = path.parent_path();
  std::set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++report.records;
    QuadrupletRecord record;
    try {
      record = ParseRecordLine(line);
    } catch (const Error& e) {
      report.violations.push_back({line_no, "", "parse", e.what()});
      continue;
    }
    if (!seen.insert(record.id).second) {
      report.violations.push_back({line_no, record.id, "duplicate-id", "id appears twice"});
      continue;
    }
    if (auto violation = CheckRecord(record, header.round, base)) {
      violation->line = line_no;
      report.violations.push_back(std::move(*violation));
    }
  }
  return report;
}

std::string FormatReport(const ValidationReport& report) {
  std::ostringstream out;
  out << "records: " << report.records << "\n";
  out << "violations: " << report.violations.size() << "\n";
  for (const auto& v : report.violations) {
    out << "  line " << v.line << " [" << v.kind << "] " << (v.id.empty() ? "-" : v.id) << ": "
        << v.message << "\n";
  }
  return out.str();
}

json ReportToJson(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"line", v.line}, {"id", v.id}, {"kind", v.kind}, {"message", v.message}});
  }
  return json{{"records", report.records}, {"violations", violations}};
}

}  // namespace trizone
