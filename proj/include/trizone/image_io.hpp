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

#ifndef TRIZONE_IMAGE_IO_HPP_
#define TRIZONE_IMAGE_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trizone/maskcore.hpp"

namespace trizone {

using Bytes = std::vector<std::uint8_t>;

// In-memory PNG codecs. Color images are 8-bit RGB; label maps, tri-zone
// masks and binary masks are 8-bit single-channel. Decoders throw kFormat on
// malformed data or an unexpected channel layout.
Bytes EncodeRgbPng(const RgbImage& image);
RgbImage DecodeRgbPng(std::span<const std::uint8_t> png);

Bytes EncodeGrayPng(const ImageGrid& grid, std::span<const std::uint8_t> values);
std::vector<std::uint8_t> DecodeGrayPng(std::span<const std::uint8_t> png,
                                        ImageGrid* grid);

// Binary masks travel as 0/255 grayscale; any nonzero value decodes as set.
Bytes EncodeMaskPng(const BinaryMask& mask);
BinaryMask DecodeMaskPng(std::span<const std::uint8_t> png);

Bytes EncodeTriZonePng(const TriZoneMask& mask);
TriZoneMask DecodeTriZonePng(std::span<const std::uint8_t> png);

// Palette sidecar: UTF-8 lines of "label=name"; blank lines and lines
// starting with '#' are ignored.
std::string FormatPalette(const Palette& palette);
Palette ParsePalette(std::string_view text);
std::filesystem::path PaletteSidecarPath(const std::filesystem::path& png_path);

Bytes ReadFileBytes(const std::filesystem::path& path);
// Writes through a temporary file and renames it into place.
void WriteFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);
std::string ReadTextFile(const std::filesystem::path& path);

RgbImage ReadRgbImage(const std::filesystem::path& path);
void WriteRgbImage(const std::filesystem::path& path, const RgbImage& image);

BinaryMask ReadBinaryMask(const std::filesystem::path& path);
void WriteBinaryMask(const std::filesystem::path& path, const BinaryMask& mask);

TriZoneMask ReadTriZoneMask(const std::filesystem::path& path);
void WriteTriZoneMask(const std::filesystem::path& path, const TriZoneMask& mask);

// Label maps carry their palette in the sidecar next to the PNG.
LabelMap ReadLabelMap(const std::filesystem::path& path);
void WriteLabelMap(const std::filesystem::path& path, const LabelMap& map);

std::string Base64Encode(std::span<const std::uint8_t> bytes);
Bytes Base64Decode(std::string_view text);

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view data);

}  // namespace trizone

#endif  // TRIZONE_IMAGE_IO_HPP_
