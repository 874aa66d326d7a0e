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

#include <openssl/evp.h>
#include <png.h>

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>

#include "trizone/error.hpp"

namespace trizone {
namespace {

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

Bytes EncodeRaw(const ImageGrid& grid, std::span<const std::uint8_t> raw,
                png_uint_32 format) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(grid.width);
  png.image.height = static_cast<png_uint_32>(grid.height);
  png.image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png.image, nullptr, &size, 0, raw.data(), 0,
                                 nullptr)) {
    throw Error(ErrorCode::kFormat, std::string("PNG sizing failed: ") + png.image.message);
  }
  Bytes out(size);
  if (!png_image_write_to_memory(&png.image, out.data(), &size, 0, raw.data(), 0,
                                 nullptr)) {
    throw Error(ErrorCode::kFormat, std::string("PNG encode failed: ") + png.image.message);
  }
  out.resize(size);
  return out;
}

std::vector<std::uint8_t> DecodeRaw(std::span<const std::uint8_t> data,
                                    png_uint_32 format, bool require_gray,
                                    ImageGrid* grid) {
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, data.data(), data.size())) {
    throw Error(ErrorCode::kFormat, std::string("PNG decode failed: ") + png.image.message);
  }
  if (require_gray && ((png.image.format & PNG_FORMAT_FLAG_COLOR) != 0 ||
                       (png.image.format & PNG_FORMAT_FLAG_LINEAR) != 0 ||
                       (png.image.format & PNG_FORMAT_FLAG_ALPHA) != 0)) {
    throw Error(ErrorCode::kFormat, "expected an 8-bit single-channel PNG");
  }
  png.image.format = format;
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, raw.data(), 0, nullptr)) {
    throw Error(ErrorCode::kFormat, std::string("PNG decode failed: ") + png.image.message);
  }
  *grid = MakeGrid(static_cast<int>(png.image.width), static_cast<int>(png.image.height));
  return raw;
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

Bytes EncodeRgbPng(const RgbImage& image) {
  return EncodeRaw(image.grid(), image.bytes(), PNG_FORMAT_RGB);
}

RgbImage DecodeRgbPng(std::span<const std::uint8_t> png) {
  ImageGrid grid;
  auto raw = DecodeRaw(png, PNG_FORMAT_RGB, false, &grid);
  return RgbImage(grid, std::move(raw));
}

Bytes EncodeGrayPng(const ImageGrid& grid, std::span<const std::uint8_t> values) {
  if (values.size() != grid.area()) {
    throw Error(ErrorCode::kInvalidArgument, "gray buffer does not match grid");
  }
  return EncodeRaw(grid, values, PNG_FORMAT_GRAY);
}

std::vector<std::uint8_t> DecodeGrayPng(std::span<const std::uint8_t> png,
                                        ImageGrid* grid) {
  return DecodeRaw(png, PNG_FORMAT_GRAY, true, grid);
}

Bytes EncodeMaskPng(const BinaryMask& mask) {
  std::vector<std::uint8_t> raw(mask.grid().area());
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] = mask.test(i) ? 255 : 0;
  return EncodeGrayPng(mask.grid(), raw);
}

BinaryMask DecodeMaskPng(std::span<const std::uint8_t> png) {
  ImageGrid grid;
  const auto raw = DecodeGrayPng(png, &grid);
  BinaryMask mask(grid);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != 0) mask.set(i);
  }
  return mask;
}

Bytes EncodeTriZonePng(const TriZoneMask& mask) {
  return EncodeGrayPng(mask.grid(), mask.codes());
}

TriZoneMask DecodeTriZonePng(std::span<const std::uint8_t> png) {
  ImageGrid grid;
  auto raw = DecodeGrayPng(png, &grid);
  return TriZoneMask(grid, std::move(raw));
}

std::string FormatPalette(const Palette& palette) {
  std::string out;
  for (const auto& [label, name] : palette.entries()) {
    out += std::to_string(label) + "=" + name + "\n";
  }
  return out;
}

Palette ParsePalette(std::string_view text) {
  std::map<std::uint8_t, std::string> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = Trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kFormat,
                  "palette line " + std::to_string(line_no) + " lacks '='");
    }
    const std::string key = Trim(std::string_view(t).substr(0, eq));
    const std::string name = Trim(std::string_view(t).substr(eq + 1));
    int label = -1;
    try {
      std::size_t used = 0;
      label = std::stoi(key, &used);
      if (used != key.size()) label = -1;
    } catch (const std::exception&) {
      label = -1;
    }
    if (label < 0 || label > 255) {
      throw Error(ErrorCode::kFormat, "palette line " + std::to_string(line_no) +
                                          ": bad label '" + key + "'");
    }
    if (!entries.emplace(static_cast<std::uint8_t>(label), name).second) {
      throw Error(ErrorCode::kFormat, "palette label " + key + " declared twice");
    }
  }
  return Palette(std::move(entries));
}

std::filesystem::path PaletteSidecarPath(const std::filesystem::path& png_path) {
  std::filesystem::path p = png_path;
  p.replace_extension(".palette.txt");
  return p;
}

Bytes ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIo, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  WriteFileBytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                 text.size()));
}

std::string ReadTextFile(const std::filesystem::path& path) {
  const Bytes b = ReadFileBytes(path);
  return std::string(b.begin(), b.end());
}

RgbImage ReadRgbImage(const std::filesystem::path& path) {
  return DecodeRgbPng(ReadFileBytes(path));
}

void WriteRgbImage(const std::filesystem::path& path, const RgbImage& image) {
  WriteFileBytes(path, EncodeRgbPng(image));
}

BinaryMask ReadBinaryMask(const std::filesystem::path& path) {
  return DecodeMaskPng(ReadFileBytes(path));
}

void WriteBinaryMask(const std::filesystem::path& path, const BinaryMask& mask) {
  WriteFileBytes(path, EncodeMaskPng(mask));
}

TriZoneMask ReadTriZoneMask(const std::filesystem::path& path) {
  return DecodeTriZonePng(ReadFileBytes(path));
}

void WriteTriZoneMask(const std::filesystem::path& path, const TriZoneMask& mask) {
  WriteFileBytes(path, EncodeTriZonePng(mask));
}

LabelMap ReadLabelMap(const std::filesystem::path& path) {
  Palette palette = ParsePalette(ReadTextFile(PaletteSidecarPath(path)));
  ImageGrid grid;
  auto raw = DecodeGrayPng(ReadFileBytes(path), &grid);
  return LabelMap(grid, std::move(raw), std::move(palette));
}

void WriteLabelMap(const std::filesystem::path& path, const LabelMap& map) {
  WriteFileBytes(path, EncodeGrayPng(map.grid(), map.labels()));
  WriteTextFile(PaletteSidecarPath(path), FormatPalette(map.palette()));
}

std::string Base64Encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                bytes.data(), static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

Bytes Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0) {
    throw Error(ErrorCode::kFormat, "base64 length is not a multiple of 4");
  }
  Bytes out(3 * text.size() / 4);
  const int n = EVP_DecodeBlock(out.data(),
                                reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) throw Error(ErrorCode::kFormat, "invalid base64 payload");
  // EVP_DecodeBlock keeps the zero bytes produced by '=' padding.
  std::size_t pad = 0;
  if (!text.empty() && text.back() == '=') ++pad;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

}  // namespace trizone
